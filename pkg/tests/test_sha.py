from dataclasses import replace

import pytest

from shacycl.acceptance import corrupted_result
from shacycl.cohomology import hn, restrict_cochain, restriction
from shacycl.glattice import multinorm_lattice, perm_lattice, restrict, trivial
from shacycl.groups import all_cyclic_subgroups, all_subgroups, cyclic, elementary_abelian, subgroup_from_generators
from shacycl.intlin import FinAbGroup
from shacycl.scenarios import (
    disjoint_cases,
    hurlimann_pairs,
    prime_spec,
    small_groups,
    valid_corpus_specs,
)
from shacycl.sha import STRATEGIES, certify, cyclic_subgroups_for, sha2_cycl

# Sha^2_cycl of the norm-one lattice J_G = Z[G]/Z equals H^3(G, Z)
# (every cyclic subgroup has H^3(C, Z) = 0), giving frozen values per group.
J_G_ORACLE = {
    "C2xC2": (2,),
    "S3": (),
    "C2xC2xC2": (2, 2, 2),
    "C4xC2": (2,),
    "D4": (2,),
    "Q8": (),
}


def test_cyclic_group_has_trivial_sha():
    G = cyclic(6)
    for H in all_subgroups(G):
        assert sha2_cycl(G, multinorm_lattice(G, [H])[0]).structure.is_trivial()


def test_trivial_lattice_klein():
    G = elementary_abelian(2, 2)
    assert sha2_cycl(G, trivial(G)).structure.is_trivial()


def test_klein_three_factors():
    res = sha2_cycl(*_gm(prime_spec(2, 3)))
    assert res.structure == FinAbGroup((2,))
    assert certify(res).ok


def test_c3xc3_four_factors():
    res = sha2_cycl(*_gm(prime_spec(3, 4)))
    assert res.structure == FinAbGroup((3, 3))
    assert certify(res).ok


def _gm(spec):
    return spec.group, spec.lattice()


@pytest.mark.parametrize("G", [G for G in small_groups(8) if G.label in J_G_ORACLE], ids=lambda G: G.label)
def test_norm_one_lattice_oracle(G):
    M = multinorm_lattice(G, [G.trivial_subgroup()])[0]
    res = sha2_cycl(G, M)
    assert res.structure == FinAbGroup(J_G_ORACLE[G.label])
    assert res.structure == hn(trivial(G), 3).structure


def test_strategy_subgroup_counts():
    G = elementary_abelian(3, 2)
    assert len(cyclic_subgroups_for(G, "all")) == 5
    assert len(cyclic_subgroups_for(G, "maximal")) == 4
    assert len(cyclic_subgroups_for(G, "conjugacy")) == 4
    with pytest.raises(ValueError):
        cyclic_subgroups_for(G, "bogus")


@pytest.mark.parametrize("spec", valid_corpus_specs(), ids=lambda s: s.label)
def test_strategy_invariance_and_certification(spec):
    M = spec.lattice()
    results = [sha2_cycl(spec.group, M, s) for s in STRATEGIES]
    assert len({r.structure for r in results}) == 1
    res = results[-1]
    rep = certify(res)
    assert rep.ok, rep.summary()
    # Sha embeds in H^2 with generator orders as claimed
    H2 = res.h2
    for z, t in zip(res.generators, res.structure.torsion):
        assert H2.is_coboundary([t * x for x in z])
    assert H2.structure.order % res.structure.order == 0


@pytest.mark.parametrize("G", small_groups(8), ids=lambda G: G.label)
def test_strategy_invariance_norm_lattices(G):
    for H in all_subgroups(G)[:-1]:
        M = multinorm_lattice(G, [H])[0]
        assert len({sha2_cycl(G, M, s).structure for s in STRATEGIES}) == 1


def test_generators_restrict_to_coboundaries_everywhere():
    G, M = _gm(prime_spec(2, 3))
    res = sha2_cycl(G, M)
    for C in all_cyclic_subgroups(G):
        f = restriction(M, C, 2)
        for c in res.coordinates:
            assert not any(f(c))


def test_certify_flags_corrupted_generator():
    res = sha2_cycl(*_gm(prime_spec(2, 3)))
    rep = certify(corrupted_result(res))
    assert not rep.ok
    bad = [c for c in rep.failures if c.kind == "restriction is a coboundary"]
    assert bad and all(c.subgroup is not None for c in bad)
    assert "CERTIFICATION FAILED" in rep.summary()


def test_certify_flags_wrong_order():
    res = sha2_cycl(*_gm(prime_spec(3, 3)))
    doubled = replace(res, generators=(tuple(3 * x for x in res.generators[0]),))
    assert not certify(doubled).ok


def test_certify_empty_result_passes():
    G = cyclic(4)
    res = sha2_cycl(G, trivial(G))
    assert res.generators == ()
    assert certify(res).ok


def test_hurlimann_pairs_vanish():
    count = 0
    for G, H1, H2 in hurlimann_pairs(8):
        count += 1
        assert sha2_cycl(G, multinorm_lattice(G, [H1, H2])[0]).structure.is_trivial(), (G.label, H1, H2)
    assert count > 100


@pytest.mark.parametrize("case", disjoint_cases(include_order16=False), ids=lambda c: c.label)
def test_linear_disjointness_vanishes(case):
    M = multinorm_lattice(case.group, [case.h1, case.h2])[0]
    assert sha2_cycl(case.group, M).structure.is_trivial()


def test_restrict_cochain_matches_restricted_cocycle():
    G = elementary_abelian(2, 2)
    M = perm_lattice(G, subgroup_from_generators(G, [1]))
    H = subgroup_from_generators(G, [2])
    for z in hn(M, 2).generators:
        zc = restrict_cochain(M, H, 2, z)
        assert hn(restrict(M, H), 2).is_cocycle(zc)
