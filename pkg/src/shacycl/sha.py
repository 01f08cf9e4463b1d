"""The cyclic Tate-Shafarevich group of a G-lattice.

Sha^2_cycl(G, M) is the kernel of the restriction maps
H^2(G, M) -> H^2(<g>, M) taken over all g in G.  Restricting to maximal
cyclic subgroups, or to one subgroup per conjugacy class, gives the same
kernel: restriction factors through larger cyclic subgroups, and
conjugation acts trivially on H^2(G, M).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from .cohomology import (
    CohomologyGroup,
    differential,
    hn,
    restrict_cochain,
    restriction,
)
from .glattice import GLattice, restrict
from .groups import FiniteGroup, Subgroup, all_cyclic_subgroups, conjugacy_reps, maximal_cyclic_subgroups
from .intlin import FinAbGroup, FinAbMap, IntMatrix, LinearSolver, fin_ab_kernel

__all__ = [
    "STRATEGIES",
    "ShaResult",
    "CertificationReport",
    "CheckRecord",
    "cyclic_subgroups_for",
    "sha2_cycl",
    "certify",
]

STRATEGIES = ("all", "maximal", "conjugacy_reduced")
_ALIASES = {"conjugacy": "conjugacy_reduced"}


@dataclass(frozen=True)
class ShaResult:
    """Sha^2_cycl(G, M) with cocycle generators.

    ``generators[i]`` is a 2-cocycle of order ``structure.torsion[i]`` in
    H^2(G, M); ``coordinates[i]`` is its class in the generator coordinates
    of ``h2``.
    """

    lattice: GLattice
    structure: FinAbGroup
    generators: tuple[tuple[int, ...], ...]
    coordinates: tuple[tuple[int, ...], ...]
    h2: CohomologyGroup
    strategy: str
    subgroups: tuple[Subgroup, ...]

    @property
    def group(self) -> FiniteGroup:
        return self.lattice.group


def cyclic_subgroups_for(G: FiniteGroup, strategy: str) -> list[Subgroup]:
    strategy = _ALIASES.get(strategy, strategy)
    if strategy == "all":
        return all_cyclic_subgroups(G)
    if strategy == "maximal":
        return maximal_cyclic_subgroups(G)
    if strategy == "conjugacy_reduced":
        return conjugacy_reps(maximal_cyclic_subgroups(G))
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


def sha2_cycl(G: FiniteGroup, M: GLattice, strategy: str = "conjugacy_reduced") -> ShaResult:
    """Kernel of H^2(G, M) -> prod H^2(C, M) over the strategy's cyclic subgroups."""
    if M.group != G:
        raise ValueError("lattice is not over the given group")
    strategy = _ALIASES.get(strategy, strategy)
    subs = tuple(cyclic_subgroups_for(G, strategy))
    h2 = hn(M, 2)
    if h2.structure.is_trivial():
        return ShaResult(M, FinAbGroup(), (), (), h2, strategy, subs)
    maps = [restriction(M, C, 2) for C in subs if C.order > 1]
    maps = [f for f in maps if f.target.ngens]
    if maps:
        kernel, coords = fin_ab_kernel(FinAbMap.stack(maps))
    else:
        kernel = h2.structure
        k = h2.structure.ngens
        coords = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    gens = tuple(tuple(h2.cocycle_from_coordinates(c)) for c in coords)
    return ShaResult(M, kernel, gens, tuple(tuple(c) for c in coords), h2, strategy, subs)


@dataclass(frozen=True)
class CheckRecord:
    generator: int
    kind: str
    subgroup: tuple[int, ...] | None
    passed: bool
    detail: str = ""


@dataclass
class CertificationReport:
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if not c.passed]

    def summary(self) -> str:
        if self.ok:
            return f"certified: {len(self.checks)} checks passed"
        lines = [f"CERTIFICATION FAILED: {len(self.failures)} of {len(self.checks)} checks"]
        for c in self.failures:
            where = f" on subgroup {list(c.subgroup)}" if c.subgroup is not None else ""
            lines.append(f"  generator {c.generator}: {c.kind}{where} {c.detail}".rstrip())
        return "\n".join(lines)


def _prime_factors(n: int) -> list[int]:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def certify(result: ShaResult, *, max_combinations: int = 256) -> CertificationReport:
    """Re-verify a ShaResult with fresh integer solves.

    Every generator must be a cocycle and must restrict to a coboundary on
    every cyclic subgroup of G (not just the ones the strategy consulted).
    Independence is checked by showing no nontrivial combination with
    coefficients below the claimed orders is a coboundary (exhaustively up to
    ``max_combinations``), and each generator has exactly its claimed order.
    """
    M = result.lattice
    G = M.group
    report = CertificationReport()
    gens = [list(z) for z in result.generators]
    if not gens:
        return report
    d2 = differential(M, 2)
    d1 = differential(M, 1)
    solver_G = LinearSolver(d1.to_array()) if d1.cols else None

    def coboundary_on_G(z) -> bool:
        if solver_G is None:
            return all(x == 0 for x in z)
        return solver_G(z) is not None

    for i, z in enumerate(gens):
        is_cocycle = all(x == 0 for x in d2 @ z)
        report.checks.append(CheckRecord(i, "cocycle", None, is_cocycle))
    subs = [C for C in all_cyclic_subgroups(G) if C.order > 1]
    for C in subs:
        MC = restrict(M, C)
        dC = differential(MC, 1)
        solver = LinearSolver(dC.to_array()) if dC.cols else None
        for i, z in enumerate(gens):
            zc = restrict_cochain(M, C, 2, z)
            ok = solver(zc) is not None if solver is not None else not any(zc)
            report.checks.append(CheckRecord(i, "restriction is a coboundary", C.elements, ok))
    orders = result.structure.torsion
    for i, (z, t) in enumerate(zip(gens, orders)):
        killed = coboundary_on_G([t * x for x in z])
        report.checks.append(CheckRecord(i, f"order divides {t}", None, killed))
        for q in _prime_factors(t):
            alive = not coboundary_on_G([(t // q) * x for x in z])
            report.checks.append(CheckRecord(i, f"order is exactly {t} (cofactor {q})", None, alive))
    total = math.prod(orders)
    if total <= max_combinations:
        for coeffs in product(*(range(t) for t in orders)):
            if not any(coeffs):
                continue
            combo = [sum(c * z[k] for c, z in zip(coeffs, gens)) for k in range(len(gens[0]))]
            ok = not coboundary_on_G(combo)
            if not ok:
                report.checks.append(
                    CheckRecord(-1, "independence", None, False, f"combination {coeffs} is a coboundary")
                )
        report.checks.append(CheckRecord(-1, "independence", None, not any(
            c.kind == "independence" and not c.passed for c in report.checks)))
    else:
        # fall back to the membership oracle of H^2(G, M)
        h2 = result.h2
        cols = [h2.coordinates(z) for z in gens]
        mat = IntMatrix([[c[r] for c in cols] for r in range(h2.structure.ngens)]) if h2.structure.ngens else IntMatrix.zeros(0, len(gens))
        K, _ = fin_ab_kernel(FinAbMap(result.structure, h2.structure, mat))
        report.checks.append(CheckRecord(-1, "independence (oracle)", None, K.is_trivial()))
    return report
