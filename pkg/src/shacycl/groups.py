"""Finite groups stored as multiplication tables.

Element 0 is always the identity.  Built-in constructors cover abelian
groups; anything else can be supplied as an explicit table.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FiniteGroup",
    "Subgroup",
    "CosetSpace",
    "GroupError",
    "cyclic",
    "direct_product",
    "abelian",
    "elementary_abelian",
    "is_prime",
    "subgroup_from_generators",
    "all_subgroups",
    "all_cyclic_subgroups",
    "maximal_cyclic_subgroups",
    "conjugacy_reps",
    "is_normal",
    "quotient",
    "cosets",
    "product_is_whole",
    "intersect",
    "is_cp_x_cp",
]

MAX_ORDER = 64


class GroupError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``mul[a, b]`` is the index of the product ``a*b``.  The table is checked
    for identity, inverses and associativity at construction time.
    """

    def __init__(self, mul, label: str = "G", labels: Sequence[str] | None = None, *, check: bool = True):
        table = np.asarray(mul, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupError("multiplication table must be a nonempty square array")
        n = table.shape[0]
        if n > MAX_ORDER:
            raise GroupError(f"group order {n} exceeds the table limit {MAX_ORDER}")
        table.flags.writeable = False
        self.mul = table
        self.order = n
        self.label = label
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if check:
            self._check_axioms()
        inv = np.empty(n, dtype=np.int64)
        for a in range(n):
            inv[a] = int(np.flatnonzero(table[a] == 0)[0])
        inv.flags.writeable = False
        self.inv = inv

    identity = 0

    def _check_axioms(self) -> None:
        n = self.order
        t = self.mul
        if (t < 0).any() or (t >= n).any():
            raise GroupError("table entries out of range")
        ar = np.arange(n)
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise GroupError("element 0 must be the identity")
        for row in t:
            if len(set(row.tolist())) != n:
                raise GroupError("table is not a Latin square")
        # (ab)c == a(bc), all triples at once
        left = t[t[:, :, None], ar[None, None, :]]
        right = t[ar[:, None, None], t[None, :, :]]
        if not np.array_equal(left, right):
            raise GroupError("multiplication is not associative")

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label}, order={self.order})"

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self is other or np.array_equal(self.mul, other.mul)

    def __hash__(self):
        return hash((self.order, self.mul.tobytes()))

    def m(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = int(self.inv[g]), -k
        out = 0
        base = g
        while k:
            if k & 1:
                out = self.m(out, base)
            base = self.m(base, base)
            k >>= 1
        return out

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = self.m(x, g)
                k += 1
            out.append(k)
        return tuple(out)

    def element_order(self, g: int) -> int:
        return self.element_orders[g]

    @property
    def exponent(self) -> int:
        from math import lcm

        return lcm(*self.element_orders)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def is_cyclic(self) -> bool:
        return max(self.element_orders) == self.order

    def conjugate(self, h: int, g: int) -> int:
        """``g h g^-1``."""
        return self.m(self.m(g, h), int(self.inv[g]))

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (0,))

    def to_json(self) -> dict:
        return {
            "order": str(self.order),
            "label": self.label,
            "mul": [[str(int(x)) for x in row] for row in self.mul],
        }

    @classmethod
    def from_json(cls, obj: dict | str) -> "FiniteGroup":
        if isinstance(obj, str):
            obj = json.loads(obj)
        mul = [[int(x) for x in row] for row in obj["mul"]]
        if "order" in obj and int(obj["order"]) != len(mul):
            raise GroupError("declared order does not match the table")
        return cls(mul, label=obj.get("label", "G"))


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(sorted(set(int(x) for x in self.elements)))
        object.__setattr__(self, "elements", els)
        G = self.parent
        s = set(els)
        if 0 not in s:
            raise GroupError("subgroup must contain the identity")
        for a in els:
            if int(G.inv[a]) not in s:
                raise GroupError("subset is not closed under inverses")
            for b in els:
                if G.m(a, b) not in s:
                    raise GroupError("subset is not closed under multiplication")
        assert G.order % len(els) == 0, "Lagrange violated"

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, g: int) -> bool:
        return g in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.elements == other.elements and self.parent == other.parent

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"Subgroup({list(self.elements)} of {self.parent.label})"

    def is_cyclic(self) -> bool:
        return any(self.parent.element_order(g) == self.order for g in self.elements)

    def generator(self) -> int:
        """Smallest element generating this (cyclic) subgroup."""
        for g in self.elements:
            if self.parent.element_order(g) == self.order:
                return g
        raise GroupError("subgroup is not cyclic")

    @cached_property
    def as_group(self) -> FiniteGroup:
        """The subgroup as a group in its own right.

        Element ``i`` of the result is ``self.elements[i]`` of the parent.
        """
        pos = {g: i for i, g in enumerate(self.elements)}
        table = [[pos[self.parent.m(a, b)] for b in self.elements] for a in self.elements]
        labels = [self.parent.labels[g] for g in self.elements]
        return FiniteGroup(table, label=f"{self.parent.label}[{self.order}]", labels=labels, check=False)


@dataclass(frozen=True)
class CosetSpace:
    """Left cosets ``gH`` with the left-multiplication action.

    ``reps`` are the smallest elements of each coset, in increasing order;
    ``action[g][i]`` is the index of the coset ``g * reps[i] * H``.
    """

    subgroup: Subgroup
    reps: tuple[int, ...]
    action: tuple[tuple[int, ...], ...]
    coset_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.reps)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError(f"cyclic group order must be positive, got {n}")
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(table, label=f"C{n}", labels=[str(i) for i in range(n)], check=False)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """``G x H`` with element ``(g, h)`` stored at index ``g*|H| + h``."""
    nG, nH = G.order, H.order
    g = np.arange(nG * nH) // nH
    h = np.arange(nG * nH) % nH
    table = G.mul[g[:, None], g[None, :]] * nH + H.mul[h[:, None], h[None, :]]
    labels = []
    for a in range(nG):
        for b in range(nH):
            la, lb = G.labels[a], H.labels[b]
            la = la[1:-1] if la.startswith("(") else la
            lb = lb[1:-1] if lb.startswith("(") else lb
            labels.append(f"({la},{lb})")
    return FiniteGroup(table, label=f"{G.label}x{H.label}", labels=labels, check=False)


def abelian(orders: Sequence[int]) -> FiniteGroup:
    """``C_{o1} x C_{o2} x ...``; element coordinates are mixed-radix."""
    if not orders:
        return cyclic(1)
    out = cyclic(orders[0])
    for o in orders[1:]:
        out = direct_product(out, cyclic(o))
    return out


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    if not is_prime(p):
        raise GroupError(f"{p} is not prime")
    if k < 1:
        raise GroupError("rank must be at least 1")
    return abelian([p] * k)


def subgroup_from_generators(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = [int(g) for g in gens]
    for g in gens:
        if not 0 <= g < G.order:
            raise GroupError(f"element index {g} out of range for {G.label}")
    found = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.m(x, g)
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(found))


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, sorted by (order, elements)."""
    seen = {(0,): G.trivial_subgroup()}
    frontier = [G.trivial_subgroup()]
    while frontier:
        nxt = []
        for H in frontier:
            for g in range(G.order):
                if g in H:
                    continue
                K = subgroup_from_generators(G, H.elements + (g,))
                if K.elements not in seen:
                    seen[K.elements] = K
                    nxt.append(K)
        frontier = nxt
    return sorted(seen.values(), key=lambda s: (s.order, s.elements))


def all_cyclic_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Each ``<g>`` exactly once, sorted lexicographically by elements."""
    subs = {}
    for g in range(G.order):
        H = subgroup_from_generators(G, [g])
        subs.setdefault(H.elements, H)
    return [subs[k] for k in sorted(subs)]


def maximal_cyclic_subgroups(G: FiniteGroup) -> list[Subgroup]:
    cyc = all_cyclic_subgroups(G)
    return [H for H in cyc if not any(H.order < K.order and H._set <= K._set for K in cyc)]


def conjugacy_reps(subgroups: Sequence[Subgroup]) -> list[Subgroup]:
    """First subgroup of each conjugacy class, in input order."""
    reps: list[Subgroup] = []
    classes: list[set] = []
    for H in subgroups:
        if any(H.elements in cls for cls in classes):
            continue
        G = H.parent
        cls = {tuple(sorted(G.conjugate(h, g) for h in H.elements)) for g in range(G.order)}
        classes.append(cls)
        reps.append(H)
    return reps


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    return all(G.conjugate(h, g) in H for g in range(G.order) for h in H.elements)


def cosets(G: FiniteGroup, H: Subgroup) -> CosetSpace:
    coset_of = [-1] * G.order
    reps = []
    for g in range(G.order):
        if coset_of[g] >= 0:
            continue
        idx = len(reps)
        reps.append(g)
        for h in H.elements:
            coset_of[G.m(g, h)] = idx
    action = tuple(tuple(coset_of[G.m(g, r)] for r in reps) for g in range(G.order))
    return CosetSpace(H, tuple(reps), action, tuple(coset_of))


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, tuple[int, ...]]:
    """``G/N`` and the projection as a tuple ``g -> coset index``."""
    if not is_normal(G, N):
        raise GroupError("quotient undefined: subgroup is not normal")
    cs = cosets(G, N)
    table = [[cs.coset_of[G.m(a, b)] for b in cs.reps] for a in cs.reps]
    Q = FiniteGroup(table, label=f"{G.label}/{N.order}", labels=[G.labels[r] for r in cs.reps])
    return Q, cs.coset_of


def intersect(H1: Subgroup, H2: Subgroup) -> Subgroup:
    if H1.parent != H2.parent:
        raise GroupError("subgroups of different groups")
    return Subgroup(H1.parent, tuple(sorted(H1._set & H2._set)))


def product_is_whole(H1: Subgroup, H2: Subgroup) -> bool:
    """Whether ``H1 * H2 = G``."""
    return H1.order * H2.order == intersect(H1, H2).order * H1.parent.order


def is_cp_x_cp(G: FiniteGroup, p: int) -> bool:
    return G.order == p * p and G.exponent == p


def random_pairs(n: int, count: int, seed: int = 0) -> list[tuple[int, int]]:
    rng = random.Random(seed)
    return [(rng.randrange(n), rng.randrange(n)) for _ in range(count)]


def all_pairs_or_sample(n: int, limit: int = 16, count: int = 100) -> Iterable[tuple[int, int]]:
    if n <= limit:
        return product(range(n), repeat=2)
    return random_pairs(n, count)


def abelian_invariants(G: FiniteGroup):
    """Invariant factors of the abelianization of G.

    Presentation: symbols [g] with [0] = 0 and [g h] = [g] + [h] for h in a
    generating set; the quotient of the free abelian group is G^ab.
    """
    from .intlin import cokernel_structure

    gens = []
    cur = G.trivial_subgroup()
    for g in range(G.order):
        if g not in cur:
            gens.append(g)
            cur = subgroup_from_generators(G, gens)
    n = G.order
    cols = [[1 if i == 0 else 0 for i in range(n)]]
    for g in range(n):
        for h in gens:
            col = [0] * n
            col[g] += 1
            col[h] += 1
            col[G.m(g, h)] -= 1
            cols.append(col)
    rel = [[c[i] for c in cols] for i in range(n)]
    group, _ = cokernel_structure(rel)
    return group


__all__.append("abelian_invariants")
