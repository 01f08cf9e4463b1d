"""Desk-scale verification table: one row per acceptance criterion.

Used by the ``paper-table`` command.  Each runner returns a
:class:`CriterionResult`; runtime limits are part of the pass condition.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Callable

from .cohomology import cyclic_hn_via_norm, differential, hn, restriction
from .glattice import multinorm_lattice, perm_lattice, restrict, trivial
from .groups import all_cyclic_subgroups, all_subgroups
from .intlin import FinAbGroup
from .multinorm import check_theorems
from .scenarios import (
    corpus_lattices,
    disjoint_main_case,
    hurlimann_pairs,
    p_plus_2_spec,
    prim_equivalence_specs,
    prime_spec,
    small_groups,
    valid_corpus_specs,
)
from .sha import STRATEGIES, certify, sha2_cycl

__all__ = ["CriterionResult", "CRITERIA", "run_criterion", "run_all"]


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    value: str
    expected: str
    seconds: float = 0.0
    details: list[str] = field(default_factory=list)


def _sha_of(spec, strategy="conjugacy_reduced"):
    M = spec.lattice()
    return sha2_cycl(spec.group, M, strategy)


def criterion_1() -> CriterionResult:
    t = time.monotonic()
    s3 = _sha_of(prime_spec(2, 3)).structure
    s2 = _sha_of(prime_spec(2, 2)).structure
    dt = time.monotonic() - t
    ok = s3 == FinAbGroup((2,)) and s2.is_trivial() and dt < 5
    return CriterionResult(1, "Klein group, p=2: n=3 and n=2", ok, f"n=3: {s3}; n=2: {s2}", "n=3: Z/2; n=2: 0", dt)


def criterion_2() -> CriterionResult:
    t = time.monotonic()
    s3 = _sha_of(prime_spec(3, 3)).structure
    s4 = _sha_of(prime_spec(3, 4)).structure
    dt = time.monotonic() - t
    ok = s3 == FinAbGroup((3,)) and s4 == FinAbGroup((3, 3)) and dt < 600
    return CriterionResult(2, "C3xC3, p=3: n=3 and n=4", ok, f"n=3: {s3}; n=4: {s4}", "n=3: Z/3; n=4: Z/3 + Z/3", dt)


def criterion_3() -> CriterionResult:
    t = time.monotonic()
    spec = p_plus_2_spec(2, 4)
    s = _sha_of(spec).structure
    dt = time.monotonic() - t
    ok = s.is_trivial() and dt < 30
    return CriterionResult(3, "(C2)^3 with n = p+2 = 4 hyperplanes", ok, str(s), "0", dt)


def criterion_4() -> CriterionResult:
    t = time.monotonic()
    failures, count = [], 0
    for G, H1, H2 in hurlimann_pairs(8):
        count += 1
        s = sha2_cycl(G, multinorm_lattice(G, [H1, H2])[0]).structure
        if not s.is_trivial():
            failures.append(f"{G.label} H1={list(H1.elements)} H2={list(H2.elements)}: {s}")
    dt = time.monotonic() - t
    return CriterionResult(4, "Hurlimann vanishing, all pairs, |G| <= 8", not failures,
                           f"{count} pairs, {len(failures)} failures", "0 failures", dt, failures)


def criterion_5() -> CriterionResult:
    t = time.monotonic()
    case = disjoint_main_case()
    s = sha2_cycl(case.group, multinorm_lattice(case.group, [case.h1, case.h2])[0]).structure
    dt = time.monotonic() - t
    return CriterionResult(5, "linear disjointness, (C2xC2)x(C2xC2)", s.is_trivial(), str(s), "0", dt)


def criterion_6() -> CriterionResult:
    t = time.monotonic()
    details, ok = [], True
    for spec in prim_equivalence_specs(2):
        rep = check_theorems(spec)
        mixed = len(set(spec.indices)) > 1 and any(i == spec.p for i in spec.indices)
        if mixed and rep.sha != rep.sha_prim:
            ok = False
        details.append(f"{spec.label}: Sha={rep.sha}, Sha_prim={rep.sha_prim}")
    for spec in valid_corpus_specs():
        rep = check_theorems(spec)
        if rep.sha.is_trivial() != rep.sha_prim.is_trivial():
            ok = False
            details.append(f"biconditional fails on {spec.label}")
    dt = time.monotonic() - t
    first = check_theorems(prim_equivalence_specs(2)[1])
    return CriterionResult(6, "prim equivalence and vanishing biconditional", ok,
                           f"C4xC2 [4,2,2]: {first.sha} vs prim {first.sha_prim}", "isomorphic; biconditional on all", dt, details)


def criterion_7() -> CriterionResult:
    t = time.monotonic()
    fails = []
    lattices = corpus_lattices(8)
    for M in lattices:
        for n in range(3):
            if not (differential(M, n + 1) @ differential(M, n)).is_zero():
                fails.append(f"d o d != 0: {M} n={n}")
        G = M.group
        for C in all_cyclic_subgroups(G):
            for n in (1, 2):
                if hn(restrict(M, C), n).structure != cyclic_hn_via_norm(M, C, n):
                    fails.append(f"cyclic oracle: {M} C={list(C.elements)} n={n}")
        for n in (1, 2, 3):
            H = hn(M, n)
            for z in H.generators:
                if not H.is_coboundary([G.order * x for x in z]):
                    fails.append(f"|G|-torsion: {M} n={n}")
    for G in small_groups(8):
        for H in all_subgroups(G):
            for n in (1, 2):
                if hn(perm_lattice(G, H), n).structure != hn(trivial(H.as_group), n).structure:
                    fails.append(f"Shapiro: {G.label} H={list(H.elements)} n={n}")
    for spec in valid_corpus_specs():
        M = spec.lattice()
        vals = {sha2_cycl(spec.group, M, s).structure for s in STRATEGIES}
        if len(vals) != 1:
            fails.append(f"strategy invariance: {spec.label}")
    dt = time.monotonic() - t
    return CriterionResult(7, "oracle suites (d o d, Shapiro, cyclic norm, |G|-torsion, strategies)",
                           not fails, f"{len(fails)} failures", "0 failures", dt, fails)


def criterion_8() -> CriterionResult:
    t = time.monotonic()
    fails = []
    for spec in valid_corpus_specs():
        res = _sha_of(spec)
        rep = certify(res)
        if not rep.ok:
            fails.append(f"{spec.label}: {rep.summary()}")
    negative_caught = not certify(corrupted_result(_sha_of(prime_spec(2, 3)))).ok
    if not negative_caught:
        fails.append("corrupted generator was not flagged")
    dt = time.monotonic() - t
    return CriterionResult(8, "certification and negative control", not fails,
                           f"{len(fails)} discrepancies; negative control {'flagged' if negative_caught else 'MISSED'}",
                           "0 discrepancies; negative control flagged", dt, fails)


def corrupted_result(res):
    """Replace the first generator by an H^2 class that survives some cyclic restriction."""
    M, h2 = res.lattice, res.h2
    for k in range(h2.structure.ngens):
        coords = [int(i == k) for i in range(h2.structure.ngens)]
        if any(any(restriction(M, C, 2)(coords)) for C in all_cyclic_subgroups(M.group) if C.order > 1):
            bad = tuple(h2.cocycle_from_coordinates(coords))
            return replace(res, generators=(bad,) + tuple(res.generators[1:]))
    raise ValueError("every H^2 class lies in Sha; no corruption available")


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
}


def run_criterion(k: int) -> CriterionResult:
    return CRITERIA[k]()


def run_all(progress: Callable[[CriterionResult], None] | None = None) -> list[CriterionResult]:
    out = []
    for k in sorted(CRITERIA):
        r = CRITERIA[k]()
        out.append(r)
        if progress:
            progress(r)
    return out
