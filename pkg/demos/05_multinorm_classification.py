"""Products of cyclic p-power extensions, described by their Galois groups.

Each factor corresponds to a normal subgroup H_i with G/H_i cyclic of
p-power order.  Replacing every factor by its degree-p subfield gives the
"prim" data.  The classification predicts Sha^2_cycl of the multinorm lattice:
(Z/p)^(n-2) when the prim group is C_p x C_p, and 0 otherwise.
Run with:  python demos/05_multinorm_classification.py
"""
from shacycl.multinorm import check_theorems, expected_sha, line_coefficients, prim_of, validate
from shacycl.scenarios import p_plus_2_spec, prim_equivalence_specs, prime_spec

specs = [prime_spec(2, 2), prime_spec(2, 3), prime_spec(3, 3), prime_spec(3, 4), p_plus_2_spec(2, 4)]
specs += prim_equivalence_specs(2)[:2]
for spec in specs:
    diag = validate(spec)
    pred = expected_sha(spec, diag)
    rep = check_theorems(spec)
    prim = prim_of(spec)
    print(f"{spec.label:16s} indices {list(spec.indices)}  |G_prim| = {prim.group.order:2d}  "
          f"Sha = {str(rep.sha):9s} prim Sha = {str(rep.sha_prim):9s} "
          f"predicted {str(pred.value) if pred.available else 'none':9s}  {'ok' if rep.passed else 'VIOLATED'}")

print("\nline labels for p = 3, four lines:", line_coefficients(prime_spec(3, 4)))
