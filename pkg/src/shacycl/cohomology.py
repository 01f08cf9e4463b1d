"""Group cohomology H^n(G, M), n <= 3, from normalized inhomogeneous cochains.

An n-cochain is a function on n-tuples of non-identity elements; tuples are
enumerated lexicographically and each tuple owns ``rank`` consecutive
coordinates.

For n >= 1 the group H^n(G, M) is finite, so the cocycles are exactly the
saturation of the coboundaries and H^n(G, M) is the torsion subgroup of
``coker d^{n-1}``.  Only the SNF of ``d^{n-1}`` is needed; the cocycle
condition is verified separately.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .glattice import GLattice, restrict
from .groups import Subgroup
from .intlin import (
    FinAbGroup,
    FinAbMap,
    IntMatrix,
    SmithForm,
    cokernel_structure,
    kernel_basis,
    snf,
    solve,
)

__all__ = [
    "CochainSpace",
    "CohomologyGroup",
    "NotACocycle",
    "differential",
    "h0",
    "hn",
    "restriction",
    "class_is_coboundary",
    "cyclic_hn_via_norm",
    "restrict_cochain",
]

MAX_DEGREE = 3


class NotACocycle(ValueError):
    pass


@dataclass(frozen=True)
class CochainSpace:
    """Normalized n-cochains of ``lattice``."""

    lattice: GLattice
    degree: int

    @property
    def base(self) -> int:
        return self.lattice.group.order - 1

    @property
    def ntuples(self) -> int:
        return self.base ** self.degree

    @property
    def dimension(self) -> int:
        return self.lattice.rank * self.ntuples

    def tuples(self) -> np.ndarray:
        return _tuples(self.lattice.group.order, self.degree)

    def tuple_index(self, tup: Sequence[int]) -> int:
        if len(tup) != self.degree or any(not 0 < g <= self.base for g in tup):
            raise ValueError(f"not a tuple of non-identity elements: {tup}")
        idx = 0
        for g in tup:
            idx = idx * self.base + (g - 1)
        return idx

    def coordinate(self, tup: Sequence[int], component: int) -> int:
        return self.tuple_index(tup) * self.lattice.rank + component


def _tuples(order: int, n: int) -> np.ndarray:
    base = order - 1
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if base == 0:
        return np.zeros((0, n), dtype=np.int64)
    grids = np.indices((base,) * n).reshape(n, -1).T + 1
    return grids.astype(np.int64)


def _encode(tups: np.ndarray, order: int) -> np.ndarray:
    base = order - 1
    idx = np.zeros(tups.shape[0], dtype=np.int64)
    for j in range(tups.shape[1]):
        idx = idx * base + (tups[:, j] - 1)
    return idx


@lru_cache(maxsize=256)
def differential(M: GLattice, n: int) -> IntMatrix:
    """``d^n : C^n -> C^{n+1}`` on normalized cochains.

    (df)(g1..g_{n+1}) = g1 f(g2..) + sum_i (-1)^i f(.., g_i g_{i+1}, ..)
    + (-1)^{n+1} f(g1..g_n); terms with an identity argument vanish.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    G = M.group
    N, r = G.order, M.rank
    src = CochainSpace(M, n)
    tgt = CochainSpace(M, n + 1)
    T = _tuples(N, n + 1)
    K = T.shape[0]
    rows_all, cols_all, vals_all = [], [], []
    if K and r:
        row_t = np.arange(K, dtype=np.int64)
        comp = np.arange(r, dtype=np.int64)
        acts = M.actions64
        # g1 . f(g2, ..., g_{n+1})
        col_t = _encode(T[:, 1:], N)
        blocks = acts[T[:, 0]]
        ri = (row_t[:, None, None] * r + comp[None, :, None]) + np.zeros((1, 1, r), dtype=np.int64)
        ci = (col_t[:, None, None] * r + comp[None, None, :]) + np.zeros((1, r, 1), dtype=np.int64)
        nz = blocks != 0
        rows_all.append(ri[nz])
        cols_all.append(ci[nz])
        vals_all.append(blocks[nz])

        def diag_term(col_t, keep, sign):
            rt = row_t[keep]
            ct = col_t
            rows_all.append((rt[:, None] * r + comp[None, :]).ravel())
            cols_all.append((ct[:, None] * r + comp[None, :]).ravel())
            vals_all.append(np.full(rt.size * r, sign, dtype=np.int64))

        for i in range(1, n + 1):
            prod = G.mul[T[:, i - 1], T[:, i]]
            keep = prod != 0
            merged = np.concatenate([T[keep, : i - 1], prod[keep, None], T[keep, i + 1:]], axis=1)
            diag_term(_encode(merged, N), keep, (-1) ** i)
        diag_term(_encode(T[:, :n], N), np.ones(K, dtype=bool), (-1) ** (n + 1))
    if rows_all:
        rows = np.concatenate(rows_all)
        cols = np.concatenate(cols_all)
        vals = np.concatenate(vals_all)
    else:
        rows = cols = vals = np.zeros(0, dtype=np.int64)
    return IntMatrix.from_coo(tgt.dimension, src.dimension, rows, cols, vals)


def h0(M: GLattice) -> tuple[int, list[list[int]]]:
    """Rank and a basis of the fixed lattice ``M^G``."""
    r = M.rank
    if r == 0:
        return 0, []
    I = np.eye(r, dtype=np.int64).astype(object)
    stacked = np.concatenate([M.actions[g] - I for g in range(M.group.order)], axis=0)
    basis = kernel_basis(stacked)
    return len(basis), basis


@dataclass(eq=False)
class CohomologyGroup:
    """H^n(G, M) with cocycle generators and a membership oracle.

    ``generators[i]`` has order ``structure.torsion[i]``.  The oracle is the
    Smith form ``U d^{n-1} V = D`` of the previous differential: the class of
    a cocycle ``z`` has coordinates ``(U z)_i mod d_i`` over the torsion
    positions.  ``U`` is only built when coordinates are first requested.
    """

    lattice: GLattice
    degree: int
    structure: FinAbGroup
    generators: list[list[int]]
    smith: SmithForm
    torsion_positions: tuple[int, ...]
    _U: np.ndarray | None = field(default=None, repr=False)

    @property
    def space(self) -> CochainSpace:
        return CochainSpace(self.lattice, self.degree)

    def _left_transform(self) -> np.ndarray:
        if self._U is None:
            if self.smith.U is not None:
                self._U = self.smith.U.to_array()
            else:
                D = differential(self.lattice, self.degree - 1).to_array()
                full = snf(D, want_u=True, want_v=False)
                assert full.d == self.smith.d
                self._U = full.U.to_array()
        return self._U

    def is_cocycle(self, z: Sequence[int]) -> bool:
        d = differential(self.lattice, self.degree)
        return all(x == 0 for x in d @ list(z))

    def coordinates(self, z: Sequence[int], *, check: bool = True) -> tuple[int, ...]:
        """Class of the cocycle ``z`` in generator coordinates."""
        if len(z) != self.space.dimension:
            raise ValueError("cochain has the wrong dimension")
        if check and not self.is_cocycle(z):
            raise NotACocycle("cochain is not a cocycle")
        if not self.torsion_positions:
            return ()
        U = self._left_transform()
        vec = np.array([int(x) for x in z], dtype=object)
        y = U[list(self.torsion_positions), :].dot(vec)
        return tuple(int(y[k]) % self.structure.torsion[k] for k in range(len(self.torsion_positions)))

    def is_coboundary(self, z: Sequence[int]) -> bool:
        return all(c == 0 for c in self.coordinates(z))

    def cocycle_from_coordinates(self, coords: Sequence[int]) -> list[int]:
        out = [0] * self.space.dimension
        for c, g in zip(coords, self.generators):
            if c:
                out = [a + c * b for a, b in zip(out, g)]
        return out


@lru_cache(maxsize=256)
def _hn_cached(M: GLattice, n: int, keep_u: bool) -> CohomologyGroup:
    D = differential(M, n - 1)
    Darr = D.to_array()
    s = snf(Darr, want_u=keep_u, want_v=True)
    pos = tuple(i for i in range(s.rank) if s.d[i] > 1)
    V = s.V.to_array() if s.V is not None else None
    gens = []
    for i in pos:
        col = Darr.dot(V[:, i]) if Darr.size else np.zeros(0, dtype=object)
        gens.append([int(x) // s.d[i] for x in col])
    structure = FinAbGroup(tuple(s.d[i] for i in pos), 0)
    return CohomologyGroup(M, n, structure, gens, s, pos)


def hn(M: GLattice, n: int) -> CohomologyGroup:
    """H^n(G, M) for 1 <= n <= 3."""
    if not 1 <= n <= MAX_DEGREE:
        raise ValueError(f"degree must be in 1..{MAX_DEGREE}")
    return _hn_cached(M, n, CochainSpace(M, n).dimension <= 600)


def restrict_cochain(M: GLattice, H: Subgroup, n: int, z: Sequence[int]) -> list[int]:
    """Restriction of an n-cochain of ``M`` to the subgroup ``H``."""
    idx = _restriction_index(M, H, n)
    return [int(z[i]) for i in idx]


def _restriction_index(M: GLattice, H: Subgroup, n: int) -> np.ndarray:
    r = M.rank
    emb = np.asarray(H.elements, dtype=np.int64)
    sub_t = _tuples(H.order, n)
    parent_t = _encode(emb[sub_t], M.group.order) if sub_t.size else np.zeros(sub_t.shape[0], dtype=np.int64)
    return (parent_t[:, None] * r + np.arange(r)[None, :]).ravel()


def restriction(M: GLattice, H: Subgroup, n: int) -> FinAbMap:
    """``res : H^n(G, M) -> H^n(H, M)`` in generator coordinates."""
    source = hn(M, n)
    MH = restrict(M, H)
    target = hn(MH, n)
    cols = [target.coordinates(restrict_cochain(M, H, n, z), check=False) for z in source.generators]
    mat = np.zeros((target.structure.ngens, source.structure.ngens), dtype=object)
    mat.fill(0)
    for j, c in enumerate(cols):
        for i, x in enumerate(c):
            mat[i, j] = x
    return FinAbMap(source.structure, target.structure, IntMatrix(mat))


def class_is_coboundary(M: GLattice, n: int, cocycle: Sequence[int], *, method: str = "oracle") -> bool:
    """Whether ``cocycle = d^{n-1} x`` for an integer cochain ``x``.

    ``method="oracle"`` uses the cached Smith form of ``hn``;
    ``method="solve"`` runs a fresh integer solve of the linear system.
    """
    if len(cocycle) != CochainSpace(M, n).dimension:
        raise ValueError("cochain has the wrong dimension")
    d = differential(M, n)
    if any(x != 0 for x in d @ list(cocycle)):
        raise NotACocycle("cochain is not a cocycle")
    if n == 0:
        return all(x == 0 for x in cocycle)
    if method == "oracle":
        return hn(M, n).is_coboundary(cocycle)
    if method == "solve":
        prev = differential(M, n - 1)
        if prev.cols == 0:
            return all(x == 0 for x in cocycle)
        return solve(prev.to_array(), list(cocycle)) is not None
    raise ValueError(f"unknown method {method!r}")


def _coords_in_basis(basis: list[list[int]], vectors: np.ndarray) -> np.ndarray:
    """Express the columns of ``vectors`` in the lattice basis ``basis``."""
    k = len(basis)
    B = np.zeros((vectors.shape[0], k), dtype=object)
    B.fill(0)
    for j, v in enumerate(basis):
        B[:, j] = v
    out = np.zeros((k, vectors.shape[1]), dtype=object)
    out.fill(0)
    for j in range(vectors.shape[1]):
        x = solve(B, [int(t) for t in vectors[:, j]])
        if x is None:
            raise ArithmeticError("vector outside the lattice")
        out[:, j] = x
    return out


def cyclic_hn_via_norm(M: GLattice, C: Subgroup, n: int) -> FinAbGroup:
    """H^n(C, M) for cyclic ``C = <c>`` from the periodic resolution.

    Even n >= 2: ``M^C / N M``; odd n: ``ker N / (c - 1) M``, where ``N`` is
    the sum of the powers of ``c``.  Independent of the cochain machinery.
    """
    if C.parent != M.group:
        raise ValueError("subgroup of a different group")
    if not C.is_cyclic():
        raise ValueError("subgroup is not cyclic")
    if n < 1:
        raise ValueError("degree must be at least 1")
    r = M.rank
    if r == 0:
        return FinAbGroup()
    G = M.group
    c = C.generator()
    A = M.actions[c]
    I = np.eye(r, dtype=np.int64).astype(object)
    Nm = np.zeros((r, r), dtype=object)
    Nm.fill(0)
    for k in range(C.order):
        Nm = Nm + M.actions[G.power(c, k)]
    if n % 2 == 0:
        sub, image = kernel_basis(A - I), Nm
    else:
        sub, image = kernel_basis(Nm), A - I
    if not sub:
        return FinAbGroup()
    coords = _coords_in_basis(sub, image)
    group, _ = cokernel_structure(coords)
    if group.free_rank:
        raise ArithmeticError("cyclic cohomology came out infinite")
    return group
