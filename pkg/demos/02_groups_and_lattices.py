"""Finite groups as multiplication tables, and integral G-lattices.

Run with:  python demos/02_groups_and_lattices.py
"""
from shacycl.glattice import multinorm_lattice, perm_lattice, restrict, trivial
from shacycl.groups import (
    abelian_invariants,
    all_cyclic_subgroups,
    conjugacy_reps,
    elementary_abelian,
    maximal_cyclic_subgroups,
    quotient,
    subgroup_from_generators,
)
from shacycl.scenarios import dihedral8

V = elementary_abelian(2, 2)
print(f"{V.label}: order {V.order}, exponent {V.exponent}")
print("maximal cyclic subgroups:", [list(H.elements) for H in maximal_cyclic_subgroups(V)])

D = dihedral8()
mc = maximal_cyclic_subgroups(D)
print(f"\n{D.label} has {len(all_cyclic_subgroups(D))} cyclic subgroups, {len(mc)} maximal,",
      f"{len(conjugacy_reps(mc))} up to conjugacy")
print("abelianization:", abelian_invariants(D))
centre = subgroup_from_generators(D, [g for g in range(D.order) if all(D.m(g, h) == D.m(h, g) for h in range(D.order))])
Q, _ = quotient(D, centre)
print(f"quotient by the centre has order {Q.order} and exponent {Q.exponent}")

# Lattices: the trivial lattice Z, the permutation lattice Z[G/H], and the
# multinorm lattice: the cokernel of Z -> sum_i Z[G/H_i], 1 -> (1, ..., 1).
H = subgroup_from_generators(V, [2])
P = perm_lattice(V, H)
print("\nZ[V/H] action of element 1:", P.action(1).to_array().tolist())
subs = [subgroup_from_generators(V, [g]) for g in (1, 2, 3)]
M, proj = multinorm_lattice(V, subs)
print(f"multinorm lattice over the three lines: rank {M.rank}")
print("projection from the permutation lattice:", proj.matrix.to_array().tolist())
print("restricted to", list(H.elements), "it is a lattice over a group of order", restrict(M, H).group.order)
print("trivial lattice of rank", trivial(V).rank)
