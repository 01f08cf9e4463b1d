"""Named scenario corpus: small groups, multinorm specs and lattice families.

Everything here is deterministic; specs are ordered the same way on every
run so that tables and JSON output are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from .glattice import GLattice, multinorm_lattice, perm_lattice, trivial
from .groups import (
    FiniteGroup,
    Subgroup,
    abelian,
    all_subgroups,
    cyclic,
    direct_product,
    elementary_abelian,
    is_normal,
    subgroup_from_generators,
)
from .intlin import FinAbGroup
from .multinorm import MultinormSpec, TheoremReport, _quotient_is_cyclic, check_theorems
from .sha import sha2_cycl

__all__ = [
    "SCENARIOS",
    "ScenarioCheck",
    "ScenarioOutcome",
    "group_from_elements",
    "symmetric3",
    "dihedral8",
    "quaternion8",
    "small_groups",
    "prime_lines",
    "prime_spec",
    "p_plus_2_spec",
    "hurlimann_pairs",
    "disjoint_cases",
    "prim_equivalence_specs",
    "valid_corpus_specs",
    "corpus_lattices",
    "run_scenario",
]


def group_from_elements(elements, mul: Callable, identity, label: str) -> FiniteGroup:
    """Multiplication table of a closed set of elements (identity moved to 0)."""
    els = [identity] + [e for e in elements if e != identity]
    pos = {e: i for i, e in enumerate(els)}
    table = [[pos[mul(a, b)] for b in els] for a in els]
    return FiniteGroup(table, label=label, labels=[str(e) for e in els])


def _closure(gens, mul, identity):
    seen = [identity]
    found = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in found:
                    found.add(y)
                    seen.append(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _perm_mul(a, b):
    # (a*b)(i) = a(b(i))
    return tuple(a[i] for i in b)


def symmetric3() -> FiniteGroup:
    e = (0, 1, 2)
    els = _closure([(1, 0, 2), (1, 2, 0)], _perm_mul, e)
    return group_from_elements(els, _perm_mul, e, "S3")


def dihedral8() -> FiniteGroup:
    e = (0, 1, 2, 3)
    els = _closure([(1, 2, 3, 0), (0, 3, 2, 1)], _perm_mul, e)
    return group_from_elements(els, _perm_mul, e, "D4")


def quaternion8() -> FiniteGroup:
    # (sign, unit) with units 1, i, j, k
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }

    def mul(a, b):
        s, u = table[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    els = [(s, u) for s in (1, -1) for u in ("1", "i", "j", "k")]
    return group_from_elements(els, mul, (1, "1"), "Q8")


def small_groups(max_order: int = 8) -> list[FiniteGroup]:
    """Every group of order <= 8 up to isomorphism (order <= 8 is the cap)."""
    if max_order > 8:
        raise ValueError("the built-in corpus stops at order 8")
    out = [cyclic(n) for n in range(1, max_order + 1)]
    extra = [
        abelian([2, 2]),
        symmetric3(),
        abelian([4, 2]),
        abelian([2, 2, 2]),
        dihedral8(),
        quaternion8(),
    ]
    out += [G for G in extra if G.order <= max_order]
    return sorted(out, key=lambda G: (G.order, G.label))


def _sigma(p: int, i: int, j: int) -> int:
    """Index of sigma(i, j) in C_p x C_p as built by ``elementary_abelian``."""
    return (i % p) * p + (j % p)


def prime_lines(p: int) -> list[Subgroup]:
    """All p+1 lines of C_p x C_p, ordered <s(0,1)>, <s(1,1)>, ..., <s(1,p-1)>, <s(1,0)>."""
    G = elementary_abelian(p, 2)
    gens = [_sigma(p, 0, 1)] + [_sigma(p, 1, j) for j in range(1, p)] + [_sigma(p, 1, 0)]
    return [subgroup_from_generators(G, [g]) for g in gens]


def prime_spec(p: int, n: int) -> MultinormSpec:
    """n distinct degree-p factors in a C_p x C_p extension.

    The first factor is fixed by sigma(0,1) and the last by sigma(1,0); the
    middle ones by sigma(1,1), sigma(1,2), ...
    """
    lines = prime_lines(p)
    if not 1 <= n <= p + 1:
        raise ValueError(f"C{p} x C{p} has only {p + 1} index-{p} subgroups")
    if n == 1:
        chosen = [lines[0]]
    else:
        chosen = [lines[0]] + lines[1:n - 1] + [lines[-1]]
    return MultinormSpec(lines[0].parent, tuple(chosen), p, label=f"C{p}xC{p}, n={n}")


def _hyperplane(G: FiniteGroup, p: int, k: int, coeffs) -> Subgroup:
    els = []
    for g in range(G.order):
        digits = [(g // p ** (k - 1 - t)) % p for t in range(k)]
        if sum(c * x for c, x in zip(coeffs, digits)) % p == 0:
            els.append(g)
    return Subgroup(G, tuple(els))


def p_plus_2_spec(p: int, n: int | None = None) -> MultinormSpec:
    """n >= p+2 distinct hyperplanes of (C_p)^3 with trivial common intersection."""
    n = p + 2 if n is None else n
    G = elementary_abelian(p, 3)
    coeff_list = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for a in range(p):
        for b in range(p):
            for c in range(p):
                v = (a, b, c)
                if v == (0, 0, 0) or v in coeff_list:
                    continue
                first = next(x for x in v if x)
                if first != 1:
                    continue
                coeff_list.append(v)
    if not p + 2 <= n <= len(coeff_list):
        raise ValueError(f"need {p + 2} <= n <= {len(coeff_list)}")
    subs = tuple(_hyperplane(G, p, 3, c) for c in coeff_list[:n])
    return MultinormSpec(G, subs, p, label=f"(C{p})^3, n={n}")


def hurlimann_pairs(max_order: int = 8) -> Iterator[tuple[FiniteGroup, Subgroup, Subgroup]]:
    """(G, H1, H2) with H1 normal, G/H1 cyclic, H2 arbitrary."""
    for G in small_groups(max_order):
        subs = all_subgroups(G)
        for H1 in subs:
            if not (is_normal(G, H1) and _quotient_is_cyclic(G, H1)):
                continue
            for H2 in subs:
                yield G, H1, H2


@dataclass(frozen=True)
class DisjointCase:
    group: FiniteGroup
    h1: Subgroup
    h2: Subgroup
    label: str


def _product_subgroup(G: FiniteGroup, A: FiniteGroup, B: FiniteGroup, SA: Subgroup, SB: Subgroup) -> Subgroup:
    nB = B.order
    return Subgroup(G, tuple(a * nB + b for a in SA.elements for b in SB.elements))


def disjoint_cases(include_order16: bool = True) -> list[DisjointCase]:
    """G = A x B with H1 = A' x B and H2 = A x B'.

    The two Galois closures are fixed by 1 x B and A x 1, whose product is G.
    """
    pairs = [(cyclic(2), cyclic(2)), (cyclic(2), cyclic(3)), (cyclic(3), cyclic(3)),
             (abelian([2, 2]), cyclic(2)), (symmetric3(), cyclic(2))]
    if include_order16:
        pairs.append((abelian([2, 2]), abelian([2, 2])))
    out = []
    for A, B in pairs:
        G = direct_product(A, B)
        subsA, subsB = all_subgroups(A), all_subgroups(B)
        for SA in subsA:
            for SB in subsB:
                if SA.order == A.order or SB.order == B.order:
                    continue
                if G.order == 16 and (SA.order, SB.order) != (1, 1):
                    continue
                h1 = _product_subgroup(G, A, B, SA, B.whole())
                h2 = _product_subgroup(G, A, B, A.whole(), SB)
                out.append(DisjointCase(G, h1, h2, f"{A.label}x{B.label}: A'={list(SA.elements)}, B'={list(SB.elements)}"))
    return out


def disjoint_main_case() -> DisjointCase:
    """(C2xC2) x (C2xC2), H1 = 1 x K', H2 = K x 1 with K = K' = C2xC2."""
    A = abelian([2, 2])
    G = direct_product(A, A)
    h1 = _product_subgroup(G, A, A, A.trivial_subgroup(), A.whole())
    h2 = _product_subgroup(G, A, A, A.whole(), A.trivial_subgroup())
    return DisjointCase(G, h1, h2, "(C2xC2)x(C2xC2): H1 = 1 x K', H2 = K x 1")


def prim_equivalence_specs(p: int = 2) -> list[MultinormSpec]:
    """Pairwise disjoint p-power specs with mixed indices."""
    sg = subgroup_from_generators
    if p == 2:
        G = abelian([4, 2])  # (a, b) at 2a + b
        G44 = abelian([4, 4])  # (a, b) at 4a + b
        return [
            MultinormSpec(G, (sg(G, [1]), sg(G, [2])), 2, "C4xC2: [4,2]"),
            MultinormSpec(G, (sg(G, [1]), sg(G, [2]), sg(G, [3])), 2, "C4xC2: [4,2,2]"),
            MultinormSpec(G, (sg(G, [1]), sg(G, [3])), 2, "C4xC2: [4,2]'"),
            MultinormSpec(G44, (sg(G44, [1]), sg(G44, [4])), 2, "C4xC4: [4,4]"),
            MultinormSpec(G44, (sg(G44, [1]), sg(G44, [4]), sg(G44, [5])), 2, "C4xC4: [4,4,4]"),
            MultinormSpec(G44, (sg(G44, [1]), sg(G44, [4, 2])), 2, "C4xC4: [4,2]"),
            MultinormSpec(G44, (sg(G44, [1]), sg(G44, [4, 2]), sg(G44, [5])), 2, "C4xC4: [4,2,4]"),
            MultinormSpec(cyclic(4), (cyclic(4).trivial_subgroup(),), 2, "C4: [4]"),
        ]
    if p == 3:
        G = abelian([9, 3])  # (a, b) at 3a + b
        return [
            MultinormSpec(G, (sg(G, [1]), sg(G, [3])), 3, "C9xC3: [9,3]"),
        ]
    raise ValueError("prim-equivalence corpus exists for p = 2 and p = 3")


def valid_corpus_specs(include_slow: bool = False) -> list[MultinormSpec]:
    """Every cyclic p-power spec used by the verification suites."""
    specs = []
    for p in (2, 3):
        for n in range(1, p + 2):
            specs.append(prime_spec(p, n))
    specs.append(p_plus_2_spec(2, 4))
    specs.append(p_plus_2_spec(2, 5))
    specs += prim_equivalence_specs(2)
    if include_slow:
        specs += prim_equivalence_specs(3)
    return specs


def corpus_lattices(max_order: int = 8) -> list[GLattice]:
    """Trivial, permutation and small multinorm lattices over small groups."""
    out = []
    for G in small_groups(max_order):
        out.append(trivial(G))
        subs = all_subgroups(G)
        for H in subs:
            if H.order < G.order:
                out.append(perm_lattice(G, H))
        proper = [H for H in subs if H.order < G.order]
        if len(proper) >= 2:
            out.append(multinorm_lattice(G, proper[-2:])[0])
        if proper:
            out.append(multinorm_lattice(G, proper[:1])[0])
    return out


@dataclass(frozen=True)
class ScenarioCheck:
    name: str
    passed: bool
    detail: str
    value: FinAbGroup | None = None


@dataclass
class ScenarioOutcome:
    scenario: str
    p: int | None
    n: int | None
    result: FinAbGroup | None
    checks: list[ScenarioCheck] = field(default_factory=list)
    reports: list[TheoremReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


SCENARIOS = ("prime", "p-plus-2", "hurlimann", "disjoint", "prim-equivalence")


def _report_checks(rep: TheoremReport) -> list[ScenarioCheck]:
    label = rep.spec.label
    return [
        ScenarioCheck(f"{label}: {c.name}", c.passed, c.detail, rep.sha)
        for c in rep.checks
        if c.applicable
    ]


def run_scenario(name: str, p: int = 2, n: int | None = None, *, strategy: str = "conjugacy_reduced",
                 progress: Callable[[ScenarioCheck], None] | None = None) -> ScenarioOutcome:
    """Run one named verification scenario."""
    out = ScenarioOutcome(name, p, n, None)

    def add(check: ScenarioCheck):
        out.checks.append(check)
        if progress:
            progress(check)

    if name == "prime":
        n = p + 1 if n is None else n
        rep = check_theorems(prime_spec(p, n), strategy=strategy)
        out.result = rep.sha
        out.reports.append(rep)
        for c in _report_checks(rep):
            add(c)
    elif name == "p-plus-2":
        n = p + 2 if n is None else n
        rep = check_theorems(p_plus_2_spec(p, n), strategy=strategy)
        out.result = rep.sha
        out.reports.append(rep)
        for c in _report_checks(rep):
            add(c)
    elif name == "hurlimann":
        for G, H1, H2 in hurlimann_pairs(8):
            M = multinorm_lattice(G, [H1, H2])[0]
            s = sha2_cycl(G, M, strategy).structure
            add(ScenarioCheck(
                f"{G.label}: H1={list(H1.elements)}, H2={list(H2.elements)}",
                s.is_trivial(), f"Sha = {s}", s,
            ))
        out.result = FinAbGroup() if out.passed else None
    elif name == "disjoint":
        cases = [disjoint_main_case()] + disjoint_cases(include_order16=False)
        for case in cases:
            M = multinorm_lattice(case.group, [case.h1, case.h2])[0]
            s = sha2_cycl(case.group, M, strategy).structure
            add(ScenarioCheck(case.label, s.is_trivial(), f"Sha = {s}", s))
        out.result = out.checks[0].value
    elif name == "prim-equivalence":
        for spec in prim_equivalence_specs(p):
            if n is not None and spec.n != n:
                continue
            rep = check_theorems(spec, strategy=strategy)
            out.reports.append(rep)
            for c in _report_checks(rep):
                add(c)
        if not out.reports:
            raise ValueError(f"no prim-equivalence spec with p = {p}, n = {n}")
        out.result = out.reports[0].sha
    else:
        raise ValueError(f"unknown scenario {name!r}")
    return out
