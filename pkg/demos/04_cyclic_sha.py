"""The cyclic Tate-Shafarevich group Sha^2_cycl(G, M) and its certification.

Sha^2_cycl(G, M) consists of the classes in H^2(G, M) that restrict to zero
on every cyclic subgroup.  Run with:  python demos/04_cyclic_sha.py
"""
from shacycl.acceptance import corrupted_result
from shacycl.glattice import multinorm_lattice, trivial
from shacycl.groups import elementary_abelian, subgroup_from_generators
from shacycl.scenarios import small_groups
from shacycl.sha import STRATEGIES, certify, sha2_cycl

V = elementary_abelian(2, 2)
lines = [subgroup_from_generators(V, [g]) for g in (1, 2, 3)]
for n in (2, 3):
    M = multinorm_lattice(V, lines[:n])[0]
    res = sha2_cycl(V, M)
    print(f"Klein group, {n} lines: H^2 = {res.h2.structure}, Sha^2_cycl = {res.structure}")

M = multinorm_lattice(V, lines)[0]
print("\nall three strategies agree:", {s: str(sha2_cycl(V, M, s).structure) for s in STRATEGIES})

res = sha2_cycl(V, M)
print(certify(res).summary())
print("a corrupted generator is caught:")
print(certify(corrupted_result(res)).summary())

# For the norm-one lattice of Z[G], Sha^2_cycl equals H^3(G, Z).
print()
for G in small_groups(8):
    if G.order in (4, 6, 8) and not G.is_cyclic():
        J = multinorm_lattice(G, [G.trivial_subgroup()])[0]
        print(f"{G.label:9s} Sha^2_cycl(norm-one lattice) = {sha2_cycl(G, J).structure}")
print("and for a trivial lattice:", sha2_cycl(V, trivial(V)).structure)
