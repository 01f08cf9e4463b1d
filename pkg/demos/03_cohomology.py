"""Group cohomology H^n(G, M) from normalized cochains, with two independent oracles.

Run with:  python demos/03_cohomology.py
"""
from shacycl.cohomology import cyclic_hn_via_norm, differential, h0, hn, restriction
from shacycl.glattice import multinorm_lattice, perm_lattice, trivial
from shacycl.groups import all_subgroups, cyclic, elementary_abelian, subgroup_from_generators

V = elementary_abelian(2, 2)
Z = trivial(V)
for n in (1, 2, 3):
    print(f"H^{n}(C2xC2, Z) = {hn(Z, n).structure}")
print("H^0 rank:", h0(Z)[0])

# The complex really is a complex.
M = multinorm_lattice(V, [subgroup_from_generators(V, [g]) for g in (1, 2, 3)])[0]
print("\nd2 o d1 vanishes on the multinorm lattice:", (differential(M, 2) @ differential(M, 1)).is_zero())

# Oracle 1: periodic cohomology of cyclic groups via the norm element.
C6 = cyclic(6)
J = multinorm_lattice(C6, [C6.trivial_subgroup()])[0]
for n in (1, 2):
    print(f"C6, norm-one lattice, n={n}: cochains {hn(J, n).structure}, norm formula {cyclic_hn_via_norm(J, C6.whole(), n)}")

# Oracle 2: Shapiro's lemma, H^n(G, Z[G/H]) = H^n(H, Z).
for H in all_subgroups(V):
    print(f"H = {list(H.elements)}: H^2(G, Z[G/H]) = {hn(perm_lattice(V, H), 2).structure},",
          f"H^2(H, Z) = {hn(trivial(H.as_group), 2).structure}")

# Restriction maps are homomorphisms of finite abelian groups.
f = restriction(Z, subgroup_from_generators(V, [1]), 2)
print("\nrestriction H^2(V, Z) -> H^2(<1>, Z) on the generators:", [f(e) for e in ([1, 0], [0, 1])])
