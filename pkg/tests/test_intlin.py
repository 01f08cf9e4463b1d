import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shacycl.intlin import (
    DirectSum,
    FinAbGroup,
    FinAbMap,
    IllDefinedHomomorphism,
    IntMatrix,
    cokernel_structure,
    det,
    fin_ab_kernel,
    hnf,
    kernel_basis,
    snf,
    solve,
)


def mat(rows):
    return IntMatrix(rows)


# ---------------------------------------------------------------- frozen examples

@pytest.mark.parametrize(
    "A, d",
    [
        ([[2, 0], [0, 4]], (2, 4)),
        ([[2, 0], [0, 3]], (1, 6)),
        ([[0, 0], [0, 0]], (0, 0)),
        ([[6, 4], [4, 6]], (2, 10)),
        ([[1, 2, 3], [4, 5, 6], [7, 8, 9]], (1, 3, 0)),
    ],
)
def test_snf_diagonal(A, d):
    s = snf(A)
    assert s.d == d
    assert (s.U @ mat(A) @ s.V) == s.diagonal_matrix(len(A), len(A[0]))


def test_hnf_row_vector():
    H, T = hnf([[2, 4]])
    assert H.to_array().tolist() == [[2, 0]]
    assert (mat([[2, 4]]) @ T) == H
    assert abs(det(T)) == 1


@pytest.mark.parametrize(
    "A, expected",
    [([[1, 1]], [[1, -1]]), ([[1, 2]], [[2, -1]]), ([[1, 0], [0, 1]], [])],
)
def test_kernel_basis(A, expected):
    assert kernel_basis(A) == expected


@pytest.mark.parametrize(
    "A, torsion, free",
    [([[2]], (2,), 0), ([[2, 0], [0, 3]], (6,), 0), ([[0]], (), 1), ([[2], [0]], (2,), 1)],
)
def test_cokernel(A, torsion, free):
    G, _ = cokernel_structure(A)
    assert G == FinAbGroup(torsion, free)


@pytest.mark.parametrize(
    "A, b, x",
    [([[2]], [4], [2]), ([[2]], [3], None), ([[1, 0], [0, 1]], [1, 2], [1, 2])],
)
def test_solve(A, b, x):
    assert solve(A, b) == x


def test_fin_ab_kernel_examples():
    Z2, Z4 = FinAbGroup((2,)), FinAbGroup((4,))
    K, gens = fin_ab_kernel(FinAbMap(Z4, Z2, mat([[1]])))
    assert K == FinAbGroup((2,))
    assert [tuple(g) for g in gens] in ([(2,)],)
    K, _ = fin_ab_kernel(FinAbMap(FinAbGroup((2, 2)), Z2, mat([[0, 0]])))
    assert K == FinAbGroup((2, 2))
    K, _ = fin_ab_kernel(FinAbMap(Z2, Z2, mat([[1]])))
    assert K.is_trivial()


def test_fin_ab_kernel_rejects_ill_defined():
    with pytest.raises(IllDefinedHomomorphism, match="ill-defined homomorphism"):
        fin_ab_kernel(FinAbMap(FinAbGroup((2,)), FinAbGroup((3,)), mat([[1]])))


def test_fin_ab_group_canonical_and_str():
    assert FinAbGroup.from_orders([2, 3]) == FinAbGroup((6,))
    assert FinAbGroup.from_orders([4, 2]) == FinAbGroup((2, 4))
    assert FinAbGroup.from_orders([1, 1]).is_trivial()
    assert str(FinAbGroup((2, 4))) == "Z/2 + Z/4"
    assert str(FinAbGroup()) == "0"
    assert FinAbGroup((2, 4)).order == 8
    with pytest.raises(ValueError):
        FinAbGroup((2, 3))


def test_direct_sum_target_kernel():
    # Z/4 -> Z/2 + Z/4, x -> (x, 2x) has kernel {0, 2}
    tgt = DirectSum((FinAbGroup((2,)), FinAbGroup((4,))))
    K, gens = fin_ab_kernel(FinAbMap(FinAbGroup((4,)), tgt, mat([[1], [2]])))
    assert K == FinAbGroup((2,))
    assert gens[0][0] % 4 == 2


def test_json_roundtrip_big_entries():
    big = 10**30
    A = mat([[big, -1], [0, 3]])
    obj = A.to_json()
    assert all(isinstance(e, str) for e in obj["entries"])
    assert IntMatrix.from_json(obj) == A
    G = FinAbGroup((2, 4), 1)
    assert FinAbGroup.from_json(G.to_json()) == G


def test_sparse_and_dense_agree():
    trip = [(0, 0, 2), (1, 2, -3), (2, 1, 5)]
    S = IntMatrix.from_sparse(3, 3, trip)
    D = mat([[2, 0, 0], [0, 0, -3], [0, 5, 0]])
    assert S == D
    assert snf(S).d == snf(D).d


# ---------------------------------------------------------------- properties

small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def int_matrices(draw, max_dim=4):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    return [[draw(small_ints) for _ in range(n)] for _ in range(m)]


@st.composite
def unimodular(draw, n):
    U = np.eye(n, dtype=object)
    for _ in range(draw(st.integers(0, 6))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i != j:
            U[i, :] = U[i, :] + draw(st.integers(-3, 3)) * U[j, :]
    return U


@settings(max_examples=60, deadline=None)
@given(int_matrices(), st.data())
def test_snf_invariant_under_unimodular(A, data):
    A = np.array(A, dtype=object)
    P = data.draw(unimodular(A.shape[0]))
    Q = data.draw(unimodular(A.shape[1]))
    s = snf(A)
    assert snf(P.dot(A).dot(Q)).d == s.d
    nz = [x for x in s.d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(x >= 0 for x in s.d)
    assert s.U @ IntMatrix(A) @ s.V == s.diagonal_matrix(*A.shape)


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_kernel_and_hnf_properties(A):
    A = np.array(A, dtype=object)
    H, T = hnf(A)
    assert IntMatrix(A) @ T == H
    assert abs(det(T)) == 1
    for v in kernel_basis(A):
        assert all(x == 0 for x in IntMatrix(A) @ v)
    assert len(kernel_basis(A)) == A.shape[1] - snf(A).rank


@settings(max_examples=60, deadline=None)
@given(int_matrices(), st.lists(small_ints, min_size=4, max_size=4))
def test_solve_is_exact(A, x0):
    A = np.array(A, dtype=object)
    x0 = x0[: A.shape[1]]
    b = list(A.dot(np.array(x0, dtype=object)))
    x = solve(A, b)
    assert x is not None
    assert list(A.dot(np.array(x, dtype=object))) == b


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(2, 12), min_size=1, max_size=3), st.data())
def test_kernel_order_times_image_order(orders, data):
    src = FinAbGroup.from_orders(orders)
    tgt = FinAbGroup.from_orders(data.draw(st.lists(st.integers(2, 12), min_size=1, max_size=2)))
    # build a well-defined map: column j must be killed by the j-th source order
    cols = []
    for t in src.torsion:
        col = []
        for b in tgt.torsion:
            g = np.gcd(t, b)
            col.append((b // g) * data.draw(st.integers(0, g - 1)))
        cols.append(col)
    M = IntMatrix([[c[i] for c in cols] for i in range(tgt.ngens)])
    f = FinAbMap(src, tgt, M)
    assert f.is_well_defined()
    K, gens = fin_ab_kernel(f)
    image = {f([int(x) for x in v]) for v in np.ndindex(*src.torsion)}
    assert K.order * len(image) == src.order
    for g in gens:
        assert not any(f(g))
