import pytest

from shacycl.groups import Subgroup, abelian, cyclic, elementary_abelian, is_cp_x_cp, subgroup_from_generators
from shacycl.intlin import FinAbGroup
from shacycl.multinorm import (
    MultinormSpec,
    SpecError,
    check_theorems,
    expected_sha,
    line_coefficients,
    prim_of,
    validate,
)
from shacycl.scenarios import p_plus_2_spec, prim_equivalence_specs, prime_lines, prime_spec, valid_corpus_specs


def klein_spec(n=3):
    return prime_spec(2, n)


# ---------------------------------------------------------------- validate

def test_validate_klein():
    d = validate(klein_spec())
    assert d.valid and d.pairwise_disjoint and d.cyclic_p_power
    assert d.g_prim_order == 4 and d.n_le_p_plus_1


def test_validate_repeated_subgroup_not_disjoint():
    spec = klein_spec()
    H = spec.subgroups[0]
    d = validate(MultinormSpec(spec.group, (H, H, spec.subgroups[1]), 2))
    assert not d.pairwise_disjoint and not d.distinct
    assert (0, 1) in d.non_disjoint_pairs
    assert not d.valid


def test_validate_too_many_lines():
    lines = prime_lines(3)
    d = validate(MultinormSpec(lines[0].parent, tuple(lines) + (lines[0],), 3))
    assert d.n_le_p_plus_1 is False
    assert not d.valid
    assert any("exceeds p + 1" in m for m in d.messages)


def test_validate_non_cyclic_quotient():
    G = elementary_abelian(2, 2)
    d = validate(MultinormSpec(G, (G.trivial_subgroup(),), 2))
    assert not d.cyclic_p_power
    assert any("not cyclic" in m for m in d.messages)


@pytest.mark.parametrize("p", [1, 4, 6])
def test_validate_rejects_non_prime(p):
    with pytest.raises(SpecError):
        validate(MultinormSpec(cyclic(4), (cyclic(4).trivial_subgroup(),), p))


def test_validate_rejects_foreign_subgroup():
    with pytest.raises(SpecError):
        validate(MultinormSpec(cyclic(4), (cyclic(2).trivial_subgroup(),), 2))


# ---------------------------------------------------------------- prim

def test_prim_index_p_is_unchanged():
    spec = klein_spec()
    prim = prim_of(spec)
    assert prim.group.order == 4 and prim.kernel.order == 1
    assert tuple(H.elements for H in prim.enlarged) == tuple(H.elements for H in spec.subgroups)


def test_prim_c4():
    G = cyclic(4)
    prim = prim_of(MultinormSpec(G, (G.trivial_subgroup(),), 2))
    assert prim.enlarged[0].elements == (0, 2)
    assert prim.group.order == 2
    assert prim.subgroups[0].order == 1


@pytest.mark.parametrize("spec", valid_corpus_specs(), ids=lambda s: s.label)
def test_prim_invariants(spec):
    prim = prim_of(spec)
    G = prim.group
    assert G.exponent == spec.p
    assert all(H.index == spec.p for H in prim.subgroups)
    again = prim_of(prim.spec(spec.p))
    assert again.group.order == G.order


def test_prim_rejects_non_cyclic():
    G = elementary_abelian(2, 2)
    with pytest.raises(SpecError):
        prim_of(MultinormSpec(G, (G.trivial_subgroup(),), 2))


# ---------------------------------------------------------------- predictions

def test_expected_klein():
    assert expected_sha(klein_spec()).value == FinAbGroup((2,))


def test_expected_hyperplanes():
    pred = expected_sha(p_plus_2_spec(2, 4))
    assert pred.available and pred.value.is_trivial()


@pytest.mark.parametrize("p", [2, 3])
def test_expected_two_factors_trivial(p):
    assert expected_sha(prime_spec(p, 2)).value.is_trivial()


def test_no_prediction_is_distinct_from_trivial():
    G = abelian([4, 4])
    sg = subgroup_from_generators
    spec = MultinormSpec(G, (sg(G, [1]), sg(G, [4])), 2)
    pred = expected_sha(spec)
    assert not pred.available and pred.value is None


# ---------------------------------------------------------------- theorem checks

def test_check_klein_all_pass():
    rep = check_theorems(klein_spec())
    assert rep.passed and rep.sha == FinAbGroup((2,))
    assert any(c.applicable and c.name == "expected value" for c in rep.checks)


def test_check_hyperplanes_pass():
    rep = check_theorems(p_plus_2_spec(2, 4))
    assert rep.passed and rep.sha.is_trivial()


def test_corrupted_expectation_fails():
    rep = check_theorems(klein_spec(), expected=FinAbGroup((4,)))
    assert not rep.passed
    assert "expected value" in rep.violated


@pytest.mark.parametrize("spec", valid_corpus_specs(), ids=lambda s: s.label)
def test_corpus_theorems(spec):
    rep = check_theorems(spec)
    assert rep.passed, rep.violated
    assert rep.sha.is_trivial() == rep.sha_prim.is_trivial()
    if any(i == spec.p for i in spec.indices):
        assert rep.sha == rep.sha_prim


def test_mixed_indices_example():
    spec = prim_equivalence_specs(2)[1]
    assert sorted(spec.indices) == [2, 2, 4]
    rep = check_theorems(spec)
    assert rep.sha == rep.sha_prim == FinAbGroup((2,))


@pytest.mark.slow
def test_mixed_indices_p3():
    (spec,) = prim_equivalence_specs(3)
    rep = check_theorems(spec)
    assert rep.passed and rep.sha == rep.sha_prim


# ---------------------------------------------------------------- line coefficients

def test_line_coefficients_p2():
    assert line_coefficients(klein_spec()) == [1]


def test_line_coefficients_p3():
    assert line_coefficients(prime_spec(3, 4)) == [1, 2]


def test_line_coefficients_two_lines():
    assert line_coefficients(prime_spec(3, 2)) == []


def test_line_coefficients_rejects_other_groups():
    G = cyclic(4)
    with pytest.raises(SpecError):
        line_coefficients(MultinormSpec(G, (Subgroup(G, (0, 2)),), 2))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_line_coefficients_cover_all_middle_lines(p):
    lines = prime_lines(p)
    G = lines[0].parent
    assert is_cp_x_cp(G, p)
    coeffs = line_coefficients(MultinormSpec(G, tuple(lines), p))
    assert sorted(coeffs) == list(range(1, p))
