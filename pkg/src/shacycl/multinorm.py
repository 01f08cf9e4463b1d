"""Multinorm specs: products of cyclic p-power extensions, in group terms.

A spec is a finite group G, subgroups H_1..H_n (the fixed groups of the
factors) and a prime p.  Each factor is cyclic of p-power degree when
G/H_i is cyclic of p-power order.  Its degree-p subfield corresponds to
the unique index-p overgroup of H_i.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

from .glattice import GLattice, multinorm_lattice
from .groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    intersect,
    is_cp_x_cp,
    is_normal,
    is_prime,
    product_is_whole,
    quotient,
)
from .intlin import FinAbGroup
from .sha import ShaResult, sha2_cycl

__all__ = [
    "MultinormSpec",
    "Diagnostics",
    "PrimData",
    "Prediction",
    "TheoremCheck",
    "TheoremReport",
    "SpecError",
    "validate",
    "prim_of",
    "expected_sha",
    "check_theorems",
    "line_coefficients",
]


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class MultinormSpec:
    group: FiniteGroup
    subgroups: tuple[Subgroup, ...]
    p: int
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "subgroups", tuple(self.subgroups))

    @property
    def n(self) -> int:
        return len(self.subgroups)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(H.index for H in self.subgroups)

    def lattice(self) -> GLattice:
        return multinorm_lattice(self.group, self.subgroups)[0]


def _p_power_exponent(m: int, p: int) -> int | None:
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k if m == 1 else None


def _quotient_is_cyclic(G: FiniteGroup, H: Subgroup) -> bool:
    if not is_normal(G, H):
        return False
    # G/H is cyclic iff some g has g^k outside H for every proper divisor k of the index
    idx = H.index
    divisors = [k for k in range(1, idx) if idx % k == 0]
    return any(all(G.power(g, k) not in H for k in divisors) for g in range(G.order))


@dataclass
class Diagnostics:
    n: int
    p: int
    indices: tuple[int, ...]
    normal: list[bool]
    quotient_cyclic: list[bool]
    p_power_index: list[bool]
    distinct: bool
    pairwise_disjoint: bool
    non_disjoint_pairs: list[tuple[int, int]]
    faithful: bool
    g_prim_order: int | None = None
    n_le_p_plus_1: bool | None = None
    messages: list[str] = field(default_factory=list)

    @property
    def cyclic_p_power(self) -> bool:
        """Every factor is cyclic of p-power degree."""
        return all(self.quotient_cyclic) and all(self.p_power_index)

    @property
    def valid(self) -> bool:
        return (
            self.cyclic_p_power
            and self.pairwise_disjoint
            and self.n_le_p_plus_1 is not False
        )


def validate(spec: MultinormSpec) -> Diagnostics:
    G, p = spec.group, spec.p
    if not is_prime(p):
        raise SpecError(f"p = {p} is not prime")
    if not spec.subgroups:
        raise SpecError("a multinorm spec needs at least one subgroup")
    if any(H.parent != G for H in spec.subgroups):
        raise SpecError("every subgroup must belong to the spec's group")
    subs = spec.subgroups
    normal = [is_normal(G, H) for H in subs]
    cyc = [_quotient_is_cyclic(G, H) for H in subs]
    ppow = [_p_power_exponent(H.index, p) not in (None, 0) for H in subs]
    bad_pairs = [
        (i, j) for i in range(len(subs)) for j in range(i + 1, len(subs)) if not product_is_whole(subs[i], subs[j])
    ]
    distinct = len({H.elements for H in subs}) == len(subs)
    core = reduce(intersect, subs)
    diag = Diagnostics(
        n=len(subs),
        p=p,
        indices=spec.indices,
        normal=normal,
        quotient_cyclic=cyc,
        p_power_index=ppow,
        distinct=distinct,
        pairwise_disjoint=not bad_pairs,
        non_disjoint_pairs=bad_pairs,
        faithful=core.order == 1 and all(normal),
    )
    for i, (c, q) in enumerate(zip(cyc, ppow)):
        if not c:
            diag.messages.append(f"G/H_{i + 1} is not cyclic")
        if not q:
            diag.messages.append(f"[G:H_{i + 1}] = {subs[i].index} is not a positive power of {p}")
    for i, j in bad_pairs:
        diag.messages.append(f"H_{i + 1} H_{j + 1} != G (factors {i + 1}, {j + 1} not disjoint)")
    if diag.cyclic_p_power:
        prim = prim_of(spec)
        diag.g_prim_order = prim.group.order
        if prim.group.order == p * p:
            diag.n_le_p_plus_1 = diag.n <= p + 1
            if not diag.n_le_p_plus_1:
                diag.messages.append(f"n = {diag.n} exceeds p + 1 = {p + 1} with G_prim of order p^2")
    return diag


@dataclass(frozen=True)
class PrimData:
    """``G_prim = G / N`` with ``N`` the intersection of the enlarged subgroups."""

    group: FiniteGroup
    projection: tuple[int, ...]
    subgroups: tuple[Subgroup, ...]
    enlarged: tuple[Subgroup, ...]
    kernel: Subgroup

    def spec(self, p: int) -> MultinormSpec:
        return MultinormSpec(self.group, self.subgroups, p, label="prim")


def prim_of(spec: MultinormSpec) -> PrimData:
    """Replace each factor by its degree-p subfield.

    ``(H)_prim = {g : g^(p^(k-1)) in H}`` where ``[G:H] = p^k``.
    """
    G, p = spec.group, spec.p
    enlarged = []
    for i, H in enumerate(spec.subgroups):
        k = _p_power_exponent(H.index, p)
        if not k or not _quotient_is_cyclic(G, H):
            raise SpecError(f"G/H_{i + 1} is not cyclic of p-power order")
        e = p ** (k - 1)
        enlarged.append(Subgroup(G, tuple(g for g in range(G.order) if G.power(g, e) in H)))
    N = reduce(intersect, enlarged)
    Q, proj = quotient(G, N)
    images = tuple(Subgroup(Q, tuple(sorted({proj[h] for h in E.elements}))) for E in enlarged)
    return PrimData(Q, tuple(proj), images, tuple(enlarged), N)


@dataclass(frozen=True)
class Prediction:
    """Value of Sha^2_cycl forced by the classification, or no prediction."""

    value: FinAbGroup | None
    reason: str

    @property
    def available(self) -> bool:
        return self.value is not None


def expected_sha(spec: MultinormSpec, diag: Diagnostics | None = None) -> Prediction:
    diag = diag or validate(spec)
    p, n = spec.p, spec.n
    if not diag.cyclic_p_power:
        return Prediction(None, "factors are not all cyclic of p-power degree")
    if not diag.pairwise_disjoint:
        return Prediction(None, "factors are not pairwise disjoint")
    if diag.n_le_p_plus_1 is False:
        return Prediction(None, "more than p + 1 factors inside a degree p^2 extension")
    some_prime = any(i == p for i in spec.indices)
    if not (some_prime or n >= p + 2):
        return Prediction(None, "no factor of degree p and fewer than p + 2 factors")
    prim = prim_of(spec)
    if is_cp_x_cp(prim.group, p):
        if n < 2:
            return Prediction(None, "G_prim of order p^2 needs n >= 2")
        return Prediction(FinAbGroup.elementary(p, n - 2), f"G_prim = C{p} x C{p}: (Z/{p})^(n-2)")
    return Prediction(FinAbGroup(), f"G_prim of order {prim.group.order} is not C{p} x C{p}")


@dataclass(frozen=True)
class TheoremCheck:
    name: str
    applicable: bool
    passed: bool
    detail: str


@dataclass
class TheoremReport:
    spec: MultinormSpec
    sha: FinAbGroup
    sha_prim: FinAbGroup | None
    prediction: Prediction
    checks: list[TheoremCheck]
    result: ShaResult | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.applicable)

    @property
    def violated(self) -> list[str]:
        return [c.name for c in self.checks if c.applicable and not c.passed]


def check_theorems(
    spec: MultinormSpec,
    *,
    strategy: str = "conjugacy_reduced",
    expected: FinAbGroup | None = None,
) -> TheoremReport:
    """Compute Sha for the spec and its prim reduction and compare.

    ``expected`` overrides the classification's prediction (used to test
    that a wrong expectation is reported as a failure).
    """
    diag = validate(spec)
    if not diag.cyclic_p_power:
        raise SpecError("; ".join(diag.messages) or "invalid spec")
    G = spec.group
    M = spec.lattice()
    res = sha2_cycl(G, M, strategy)
    prim = prim_of(spec)
    Mp = multinorm_lattice(prim.group, prim.subgroups)[0]
    res_p = sha2_cycl(prim.group, Mp, strategy)
    sha, sha_p = res.structure, res_p.structure
    pred = expected_sha(spec, diag)
    if expected is not None:
        pred = Prediction(expected, "injected expectation")
    p = spec.p
    checks = []
    checks.append(TheoremCheck(
        "vanishing biconditional (G vs G_prim)",
        True,
        sha.is_trivial() == sha_p.is_trivial(),
        f"Sha(G) = {sha}, Sha(G_prim) = {sha_p}",
    ))
    iso_ok = diag.pairwise_disjoint and any(i == p for i in spec.indices)
    checks.append(TheoremCheck(
        "isomorphism with prim when some factor has degree p",
        iso_ok,
        sha == sha_p,
        f"Sha(G) = {sha}, Sha(G_prim) = {sha_p}",
    ))
    prim_applicable = diag.pairwise_disjoint and diag.n_le_p_plus_1 is not False and spec.n >= 2
    if prim_applicable:
        want_p = FinAbGroup.elementary(p, spec.n - 2) if is_cp_x_cp(prim.group, p) else FinAbGroup()
    else:
        want_p = None
    checks.append(TheoremCheck(
        "degree-p classification on G_prim",
        prim_applicable,
        want_p is not None and sha_p == want_p,
        f"Sha(G_prim) = {sha_p}, predicted {want_p}",
    ))
    checks.append(TheoremCheck(
        "vanishing for n >= p + 2",
        diag.pairwise_disjoint and spec.n >= p + 2,
        sha.is_trivial(),
        f"n = {spec.n}, Sha(G) = {sha}",
    ))
    checks.append(TheoremCheck(
        "expected value",
        pred.available,
        pred.available and sha == pred.value,
        f"Sha(G) = {sha}, expected {pred.value if pred.available else 'no prediction'} ({pred.reason})",
    ))
    return TheoremReport(spec, sha, sha_p, pred, checks, res)


def line_coefficients(spec: MultinormSpec) -> list[int]:
    """Coefficients ``i_j`` relating the middle factors to the first and last.

    G must be ``C_p x C_p`` with distinct index-p subgroups.  Writing ``s``
    for the smallest generator of H_n and ``t`` for that of H_1 (so that
    ``s = sigma(1,0)`` and ``t = sigma(0,1)``), factor j is fixed by
    ``s * t^(i_j)`` with ``1 <= i_j <= p-1``.
    """
    G, p = spec.group, spec.p
    if not is_cp_x_cp(G, p):
        raise SpecError(f"{G.label} is not C{p} x C{p}")
    subs = spec.subgroups
    if any(H.index != p for H in subs):
        raise SpecError("every subgroup must have index p")
    if len({H.elements for H in subs}) != len(subs):
        raise SpecError("subgroups must be distinct")
    if len(subs) <= 2:
        return []
    t = subs[0].generator()
    s = subs[-1].generator()
    out = []
    for j, H in enumerate(subs[1:-1], start=2):
        hits = [i for i in range(1, p) if G.m(s, G.power(t, i)) in H]
        if len(hits) != 1:
            raise GroupError(f"subgroup {j} is not a line through s t^i")
        out.append(hits[0])
    return out
