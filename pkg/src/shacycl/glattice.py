"""G-lattices: free Z-modules of finite rank with a unimodular G-action."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .groups import FiniteGroup, Subgroup, all_pairs_or_sample, cosets
from .intlin import IntMatrix, as_object_array, det, hnf, unimodular_inverse

__all__ = [
    "GLattice",
    "EquivariantMap",
    "LatticeError",
    "trivial",
    "perm_lattice",
    "direct_sum",
    "norm_inclusion",
    "multinorm_lattice",
    "restrict",
]


class LatticeError(ValueError):
    pass


class GLattice:
    """Rank-``r`` lattice with ``action[g]`` an ``r x r`` integer matrix.

    Actions are stored for every element.  On construction the identity,
    unimodularity and the homomorphism property are checked (all pairs for
    ``|G| <= 16``, 100 seeded random pairs above).
    """

    def __init__(self, group: FiniteGroup, rank: int, action, label: str = "M", *, check: bool = True):
        self.group = group
        self.rank = int(rank)
        self.label = label
        acts = np.empty((group.order, self.rank, self.rank), dtype=object)
        if len(action) != group.order:
            raise LatticeError("need one action matrix per group element")
        for g, A in enumerate(action):
            arr = as_object_array(A) if self.rank else np.empty((0, 0), dtype=object)
            if arr.shape != (self.rank, self.rank):
                raise LatticeError(f"action matrix of {g} has shape {arr.shape}, expected rank {self.rank}")
            acts[g] = arr
        acts.flags.writeable = False
        self._acts = acts
        self._restrictions: dict[tuple[int, ...], GLattice] = {}
        if check:
            self.check()

    def check(self) -> None:
        r = self.rank
        I = np.eye(r, dtype=np.int64).astype(object)
        if not np.array_equal(self._acts[0], I):
            raise LatticeError("identity must act trivially")
        for g in range(self.group.order):
            if abs(det(self._acts[g])) != 1:
                raise LatticeError(f"action of element {g} is not unimodular")
        for g, h in all_pairs_or_sample(self.group.order):
            if not np.array_equal(self._acts[g].dot(self._acts[h]), self._acts[self.group.m(g, h)]):
                raise LatticeError(f"action is not a homomorphism at ({g}, {h})")

    def action(self, g: int) -> IntMatrix:
        return IntMatrix(self._acts[g])

    @property
    def actions(self) -> np.ndarray:
        """Read-only object array of shape ``(|G|, r, r)``."""
        return self._acts

    @cached_property
    def actions64(self) -> np.ndarray:
        if self._acts.size and max(abs(int(x)) for x in self._acts.reshape(-1)) >= 2**31:
            raise OverflowError("action entries too large for the sparse kernels")
        return self._acts.astype(np.int64).reshape(self.group.order, self.rank, self.rank)

    def __repr__(self) -> str:
        return f"GLattice({self.label}, group={self.group.label}, rank={self.rank})"

    def same_as(self, other: "GLattice") -> bool:
        return self.group == other.group and self.rank == other.rank and np.array_equal(self._acts, other._acts)

    def to_json(self) -> dict:
        return {
            "rank": str(self.rank),
            "group": self.group.to_json(),
            "action": [[[str(int(x)) for x in row] for row in self._acts[g]] for g in range(self.group.order)],
        }

    @classmethod
    def from_json(cls, obj: dict | str, group: FiniteGroup | None = None) -> "GLattice":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if group is None:
            group = FiniteGroup.from_json(obj["group"])
        rank = int(obj["rank"])
        acts = [[[int(x) for x in row] for row in A] for A in obj["action"]]
        if rank == 0:
            acts = [np.empty((0, 0), dtype=object) for _ in acts]
        return cls(group, rank, acts, label=obj.get("label", "M"))


@dataclass(frozen=True)
class EquivariantMap:
    """``matrix @ source.action(g) == target.action(g) @ matrix`` for all g."""

    source: GLattice
    target: GLattice
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.rank, self.source.rank):
            raise LatticeError("matrix shape does not match the lattice ranks")
        if self.source.group != self.target.group:
            raise LatticeError("lattices over different groups")
        M = self.matrix.to_array()
        for g in range(self.source.group.order):
            lhs = M.dot(self.source.actions[g]) if M.size else M
            rhs = self.target.actions[g].dot(M) if M.size else M
            if not np.array_equal(lhs, rhs):
                raise LatticeError(f"map is not equivariant at element {g}")


def _perm_matrix(perm: Sequence[int]) -> np.ndarray:
    n = len(perm)
    P = np.zeros((n, n), dtype=np.int64)
    for i, j in enumerate(perm):
        P[j, i] = 1
    return P


def trivial(G: FiniteGroup) -> GLattice:
    return GLattice(G, 1, [[[1]]] * G.order, label="Z", check=False)


def perm_lattice(G: FiniteGroup, H: Subgroup) -> GLattice:
    """``Z[G/H]`` with basis the left cosets, in the order of ``cosets(G, H).reps``."""
    cs = cosets(G, H)
    acts = [_perm_matrix(cs.action[g]) for g in range(G.order)]
    return GLattice(G, len(cs), acts, label=f"Z[G/H{H.order}]", check=False)


def direct_sum(lattices: Sequence[GLattice]) -> GLattice:
    if not lattices:
        raise LatticeError("direct sum of nothing")
    G = lattices[0].group
    if any(L.group != G for L in lattices):
        raise LatticeError("lattices over different groups")
    r = sum(L.rank for L in lattices)
    acts = np.zeros((G.order, r, r), dtype=object)
    off = 0
    for L in lattices:
        acts[:, off:off + L.rank, off:off + L.rank] = L.actions
        off += L.rank
    return GLattice(G, r, list(acts), label="+".join(L.label for L in lattices), check=False)


def norm_inclusion(G: FiniteGroup, H: Subgroup) -> EquivariantMap:
    P = perm_lattice(G, H)
    return EquivariantMap(trivial(G), P, IntMatrix([[1]] * P.rank))


def multinorm_lattice(G: FiniteGroup, subgroups: Sequence[Subgroup]) -> tuple[GLattice, EquivariantMap]:
    """Cokernel ``M`` of the diagonal ``Z -> + Z[G/H_i]``.

    The all-ones vector is completed to a basis by the transform of a
    column-style HNF; dropping the first new coordinate gives the basis of
    ``M``.  Returns ``M`` and the projection from the permutation lattice.
    """
    if not subgroups:
        raise LatticeError("need at least one subgroup")
    if any(H.parent != G for H in subgroups):
        raise LatticeError("subgroups must belong to G")
    P = direct_sum([perm_lattice(G, H) for H in subgroups])
    R = P.rank
    ones = [[1] * R]
    H, T = hnf(ones)
    assert H.to_array()[0, 0] == 1
    # T^t sends the norm vector to e_1
    B = T.to_array().T
    Binv = unimodular_inverse(B).to_array()
    proj = B[1:, :]
    acts = []
    for g in range(G.order):
        conj = B.dot(P.actions[g]).dot(Binv)
        acts.append(conj[1:, 1:])
    M = GLattice(G, R - 1, acts, label=f"multinorm({len(subgroups)})", check=G.order <= 16)
    return M, EquivariantMap(P, M, IntMatrix(proj) if R > 1 else IntMatrix.zeros(0, R))


def restrict(M: GLattice, H: Subgroup) -> GLattice:
    """``M`` as a lattice over ``H.as_group`` (cached per subgroup)."""
    if H.parent != M.group:
        raise LatticeError("subgroup of a different group")
    if H.order == M.group.order:
        return M
    cached = M._restrictions.get(H.elements)
    if cached is None:
        acts = [M.actions[g] for g in H.elements]
        cached = GLattice(H.as_group, M.rank, acts, label=f"{M.label}|H{H.order}", check=False)
        M._restrictions[H.elements] = cached
    return cached
