import numpy as np
import pytest

from shacycl.glattice import (
    EquivariantMap,
    GLattice,
    LatticeError,
    direct_sum,
    multinorm_lattice,
    norm_inclusion,
    perm_lattice,
    restrict,
    trivial,
)
from shacycl.groups import all_subgroups, cyclic, elementary_abelian, subgroup_from_generators
from shacycl.intlin import IntMatrix, kernel_basis, snf
from shacycl.scenarios import small_groups


def rows(M, g):
    return M.action(g).to_array().tolist()


def test_trivial_c2():
    M = trivial(cyclic(2))
    assert M.rank == 1 and rows(M, 1) == [[1]]


def test_restrict_trivial_is_trivial():
    G = elementary_abelian(2, 2)
    H = subgroup_from_generators(G, [1])
    R = restrict(trivial(G), H)
    assert R.same_as(trivial(H.as_group))


def test_perm_whole_group_is_trivial():
    G = cyclic(3)
    assert perm_lattice(G, G.whole()).same_as(trivial(G))


def test_perm_trivial_subgroup_is_regular():
    G = cyclic(4)
    assert perm_lattice(G, G.trivial_subgroup()).rank == 4


def test_perm_klein_swap():
    G = elementary_abelian(2, 2)  # element (i, j) has index 2i + j
    H = subgroup_from_generators(G, [2])  # <(1,0)>
    assert rows(perm_lattice(G, H), 1) == [[0, 1], [1, 0]]


def test_norm_inclusion_c2():
    G = cyclic(2)
    f = norm_inclusion(G, G.trivial_subgroup())
    assert f.matrix.to_array().tolist() == [[1], [1]]


def test_direct_sum_rank():
    G = cyclic(6)
    A = perm_lattice(G, subgroup_from_generators(G, [3]))
    B = perm_lattice(G, subgroup_from_generators(G, [2]))
    assert A.rank == 3 and B.rank == 2
    assert direct_sum([B, A]).rank == 5


def test_multinorm_c2_sign_action():
    G = cyclic(2)
    M, _ = multinorm_lattice(G, [G.trivial_subgroup()])
    assert M.rank == 1 and rows(M, 1) == [[-1]]


def test_multinorm_klein_rank():
    G = elementary_abelian(2, 2)
    subs = [subgroup_from_generators(G, [g]) for g in (1, 2, 3)]
    assert multinorm_lattice(G, subs)[0].rank == 5


def test_multinorm_whole_group_rank_zero():
    G = cyclic(3)
    assert multinorm_lattice(G, [G.whole()])[0].rank == 0


def test_restrict_to_trivial_and_whole():
    G = cyclic(4)
    M = perm_lattice(G, G.trivial_subgroup())
    R = restrict(M, G.trivial_subgroup())
    assert R.rank == 4 and rows(R, 0) == np.eye(4, dtype=int).tolist()
    assert restrict(M, G.whole()) is M


@pytest.mark.parametrize("G", small_groups(8), ids=lambda G: G.label)
def test_restricted_perm_lattice_fixed_vectors(G):
    # the fixed rank of Z[G/H] restricted to K is the number of K-orbits on G/H
    for H in all_subgroups(G):
        cosets = {frozenset(G.m(g, h) for h in H.elements) for g in range(G.order)}
        for K in all_subgroups(G):
            R = restrict(perm_lattice(G, H), K)
            stacked = np.concatenate([R.actions[k] - np.eye(R.rank, dtype=object) for k in range(K.order)])
            orbits = {frozenset().union(*(frozenset(G.m(k, x) for x in c) for k in K.elements)) for c in cosets}
            assert len(kernel_basis(stacked)) == len(orbits)


def test_bad_action_rejected():
    G = cyclic(2)
    with pytest.raises(LatticeError):
        GLattice(G, 1, [[[1]], [[2]]])
    with pytest.raises(LatticeError):
        GLattice(cyclic(3), 1, [[[1]], [[-1]], [[-1]]])


def test_non_equivariant_map_rejected():
    G = cyclic(2)
    P = perm_lattice(G, G.trivial_subgroup())
    with pytest.raises(LatticeError):
        EquivariantMap(trivial(G), P, IntMatrix([[1], [0]]))


@pytest.mark.parametrize("G", small_groups(8), ids=lambda G: G.label)
def test_multinorm_projection_properties(G):
    subs = all_subgroups(G)
    for chosen in (subs[:1], subs[-2:], [subs[len(subs) // 2], subs[0]]):
        M, proj = multinorm_lattice(G, chosen)
        total = sum(H.index for H in chosen)
        assert M.rank == total - 1
        # kernel of the projection is the norm line
        assert kernel_basis(proj.matrix) == [[1] * total]
        # surjective: invariant factors of the projection are all 1
        s = snf(proj.matrix)
        assert all(x == 1 for x in s.d) and s.rank == M.rank
        # equivariance is enforced by EquivariantMap; spot-check one element
        g = G.order - 1
        assert proj.matrix @ proj.source.action(g) == M.action(g) @ proj.matrix


@pytest.mark.parametrize("G", small_groups(8), ids=lambda G: G.label)
def test_lattice_json_roundtrip(G):
    M = perm_lattice(G, G.trivial_subgroup())
    assert GLattice.from_json(M.to_json()).same_as(M)
