"""Command-line front end.

Commands: ``group``, ``cohomology``, ``sha-cycl``, ``verify`` and
``paper-table``.  Every command prints a human-readable report, or with
``--json`` a single JSON document of the form::

    {command, inputs, result: {torsion, free_rank}, generators?, checks?, timing_ms}

All integers in JSON are decimal strings.  Exit codes: 0 success, 1 a
check failed, 2 the time budget ran out (a partial report is printed),
64 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import acceptance
from .cohomology import MAX_DEGREE, h0, hn
from .glattice import GLattice, multinorm_lattice, perm_lattice, trivial
from .groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    abelian_invariants,
    all_cyclic_subgroups,
    all_subgroups,
    cyclic,
    direct_product,
    maximal_cyclic_subgroups,
    subgroup_from_generators,
)
from .intlin import BudgetExceeded, FinAbGroup, time_budget
from .scenarios import SCENARIOS, dihedral8, quaternion8, run_scenario, symmetric3
from .sha import certify, sha2_cycl

__all__ = [
    "SpecSyntaxError",
    "RunConfig",
    "parse_group_spec",
    "parse_subgroup_spec",
    "parse_lattice_spec",
    "parse_args",
    "run",
    "main",
    "dump_json",
    "DEFAULT_TIME_BUDGET_SECS",
]

DEFAULT_TIME_BUDGET_SECS = 1800.0
BUDGET_ENV = "SHACYCL_TIME_BUDGET_SECS"
EXIT_OK, EXIT_CHECK_FAILED, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 64

_NAMED_GROUPS = {"S3": symmetric3, "D4": dihedral8, "Q8": quaternion8}


class SpecSyntaxError(ValueError):
    """Malformed group, subgroup or lattice spec; the message names the token."""

    def __init__(self, token: str, reason: str):
        super().__init__(f"bad spec token {token!r}: {reason}")
        self.token = token


# ---------------------------------------------------------------- grammars

def _load_json_file(token: str) -> dict:
    path = Path(token[1:])
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise SpecSyntaxError(token, f"cannot read file ({exc.strerror})") from exc
    except json.JSONDecodeError as exc:
        raise SpecSyntaxError(token, f"invalid JSON ({exc.msg})") from exc


def parse_group_spec(text: str) -> FiniteGroup:
    """``C<n>``, ``x``-separated products such as ``C2xC2xC2``, or ``@file.json``.

    The names ``S3``, ``D4`` (order 8) and ``Q8`` are also accepted as factors.
    """
    text = text.strip()
    if text.startswith("@"):
        try:
            return FiniteGroup.from_json(_load_json_file(text))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SpecSyntaxError):
                raise
            raise SpecSyntaxError(text, f"not a valid group table ({exc})") from exc
    if not text:
        raise SpecSyntaxError(text, "empty group spec")
    G = None
    for token in text.split("x"):
        if token in _NAMED_GROUPS:
            factor = _NAMED_GROUPS[token]()
        else:
            m = re.fullmatch(r"C(\d+)", token)
            if not m:
                raise SpecSyntaxError(token, "expected C<n>, S3, D4 or Q8")
            n = int(m.group(1))
            if n < 1:
                raise SpecSyntaxError(token, "cyclic order must be at least 1")
            factor = cyclic(n)
        try:
            G = factor if G is None else direct_product(G, factor)
        except GroupError as exc:
            raise SpecSyntaxError(token, str(exc)) from exc
    G.label = text
    return G


def parse_subgroup_spec(G: FiniteGroup, text: str) -> Subgroup:
    """``gens:<i,j,...>`` with element indices of G (``gens:`` is the trivial subgroup)."""
    text = text.strip()
    if not text.startswith("gens:"):
        raise SpecSyntaxError(text, "expected gens:<i,j,...>")
    body = text[5:]
    gens = []
    for tok in filter(None, (t.strip() for t in body.split(","))):
        if not tok.isdigit():
            raise SpecSyntaxError(tok, "element index must be a non-negative integer")
        g = int(tok)
        if g >= G.order:
            raise SpecSyntaxError(tok, f"element index out of range for a group of order {G.order}")
        gens.append(g)
    return subgroup_from_generators(G, gens)


def parse_lattice_spec(G: FiniteGroup, text: str) -> GLattice:
    """``trivial``, ``perm:<subgroup>``, ``multinorm:<subgroup>;<subgroup>;...`` or ``@file.json``."""
    text = text.strip()
    if text == "trivial":
        return trivial(G)
    if text.startswith("perm:"):
        return perm_lattice(G, parse_subgroup_spec(G, text[5:]))
    if text.startswith("multinorm:"):
        parts = [s for s in text[len("multinorm:"):].split(";") if s.strip()]
        if not parts:
            raise SpecSyntaxError(text, "multinorm needs at least one subgroup")
        subs = [parse_subgroup_spec(G, s) for s in parts]
        return multinorm_lattice(G, subs)[0]
    if text.startswith("@"):
        obj = _load_json_file(text)
        try:
            return GLattice.from_json(obj, G)
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecSyntaxError(text, f"not a valid lattice ({exc})") from exc
    head = text.split(":", 1)[0]
    raise SpecSyntaxError(head, "expected trivial, perm:, multinorm: or @file.json")


# ---------------------------------------------------------------- config

@dataclass
class RunConfig:
    command: str
    group: str | None = None
    lattice: str | None = None
    degree: int | None = None
    strategy: str = "conjugacy_reduced"
    certify: bool = False
    json: bool = False
    scenario: str | None = None
    p: int = 2
    n: int | None = None
    criteria: tuple[int, ...] = ()
    time_budget: float | None = DEFAULT_TIME_BUDGET_SECS
    timing: bool = True
    # parsed objects, filled by parse_args
    group_obj: FiniteGroup | None = field(default=None, repr=False, compare=False)
    lattice_obj: GLattice | None = field(default=None, repr=False, compare=False)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _budget_from_env() -> float | None:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_TIME_BUDGET_SECS
    try:
        v = float(raw)
    except ValueError:
        raise _UsageError(f"{BUDGET_ENV}={raw!r} is not a number")
    return None if v <= 0 else v


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shacycl", description="Cyclic Tate-Shafarevich groups of G-lattices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit a JSON document")
        p.add_argument("--no-timing", action="store_true", help="report timing_ms as 0 for byte-stable output")
        p.add_argument("--time-budget", type=float, default=None,
                       help=f"seconds before exact kernels abort (default: ${BUDGET_ENV} or {DEFAULT_TIME_BUDGET_SECS:g})")

    p = sub.add_parser("group", help="describe a finite group")
    p.add_argument("--group", required=True)
    common(p)

    p = sub.add_parser("cohomology", help="H^n(G, M)")
    p.add_argument("--group", required=True)
    p.add_argument("--lattice", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--certify", action="store_true")
    common(p)

    p = sub.add_parser("sha-cycl", help="Sha^2_cycl(G, M)")
    p.add_argument("--group", required=True)
    p.add_argument("--lattice", required=True)
    p.add_argument("--strategy", choices=["all", "maximal", "conjugacy", "conjugacy_reduced"], default="conjugacy")
    p.add_argument("--certify", action="store_true")
    common(p)

    p = sub.add_parser("verify", help="run a verification scenario")
    p.add_argument("--scenario", required=True, choices=list(SCENARIOS))
    p.add_argument("--p", type=int, default=2, choices=[2, 3])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--strategy", choices=["all", "maximal", "conjugacy", "conjugacy_reduced"], default="conjugacy")
    common(p)

    p = sub.add_parser("paper-table", help="run the desk-scale acceptance table")
    p.add_argument("--only", default="", help="comma-separated criterion numbers (default: all)")
    common(p)
    return parser


def parse_args(argv: Sequence[str]) -> RunConfig:
    """Parse the command line into a :class:`RunConfig`.

    Raises :class:`SpecSyntaxError` or a usage error on bad input.
    """
    ns = _build_parser().parse_args(list(argv))
    budget = ns.time_budget if ns.time_budget is not None else _budget_from_env()
    if budget is not None and budget <= 0:
        budget = None
    cfg = RunConfig(command=ns.command, json=ns.json, time_budget=budget, timing=not ns.no_timing)
    if ns.command in ("group", "cohomology", "sha-cycl"):
        cfg.group = ns.group
        cfg.group_obj = parse_group_spec(ns.group)
    if ns.command in ("cohomology", "sha-cycl"):
        cfg.lattice = ns.lattice
        cfg.lattice_obj = parse_lattice_spec(cfg.group_obj, ns.lattice)
        cfg.certify = ns.certify
    if ns.command == "cohomology":
        if not 0 <= ns.degree <= MAX_DEGREE:
            raise _UsageError(f"--degree {ns.degree}: must be between 0 and {MAX_DEGREE}")
        cfg.degree = ns.degree
    if ns.command in ("sha-cycl", "verify"):
        cfg.strategy = "conjugacy_reduced" if ns.strategy == "conjugacy" else ns.strategy
    if ns.command == "verify":
        cfg.scenario, cfg.p, cfg.n = ns.scenario, ns.p, ns.n
    if ns.command == "paper-table":
        try:
            only = tuple(int(t) for t in ns.only.split(",") if t.strip())
        except ValueError:
            raise _UsageError(f"--only {ns.only!r}: expected comma-separated integers")
        bad = [k for k in only if k not in acceptance.CRITERIA]
        if bad:
            raise _UsageError(f"--only: unknown criterion {bad[0]}")
        cfg.criteria = only
    return cfg


# ---------------------------------------------------------------- output

def dump_json(doc: dict) -> str:
    """Canonical serialization: sorted keys, two-space indent, ASCII only."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _group_json(A: FinAbGroup | None) -> dict:
    if A is None:
        return {"torsion": [], "free_rank": "0", "status": "incomplete"}
    return {"torsion": [str(t) for t in A.torsion], "free_rank": str(A.free_rank)}


def _vec_json(v) -> list[str]:
    return [str(int(x)) for x in v]


def _checks_json(checks) -> list[dict]:
    return [{"name": c["name"], "passed": bool(c["passed"]), "detail": c.get("detail", "")} for c in checks]


@dataclass
class _Report:
    command: str
    inputs: dict
    result: FinAbGroup | None = None
    extra_result: dict = field(default_factory=dict)
    generators: list | None = None
    checks: list[dict] | None = None
    text: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK
    error: str | None = None

    def add_check(self, name: str, passed: bool, detail: str = "") -> None:
        if self.checks is None:
            self.checks = []
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})
        if not passed and self.exit_code == EXIT_OK:
            self.exit_code = EXIT_CHECK_FAILED

    def render(self, as_json: bool, elapsed_ms: int) -> str:
        if as_json:
            doc: dict[str, Any] = {
                "command": self.command,
                "inputs": self.inputs,
                "result": {**_group_json(self.result), **self.extra_result},
                "timing_ms": str(elapsed_ms),
            }
            if self.generators is not None:
                doc["generators"] = [_vec_json(g) for g in self.generators]
            if self.checks is not None:
                doc["checks"] = _checks_json(self.checks)
            if self.error is not None:
                doc["error"] = self.error
            return dump_json(doc)
        lines = list(self.text)
        if self.checks:
            failed = [c for c in self.checks if not c["passed"]]
            lines.append(f"checks: {len(self.checks) - len(failed)}/{len(self.checks)} passed")
            for c in failed:
                lines.append(f"  FAIL {c['name']}: {c['detail']}")
        if self.error is not None:
            lines.append(f"ERROR: {self.error}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- commands

def _cmd_group(cfg: RunConfig, rep: _Report) -> None:
    G = cfg.group_obj
    ab = abelian_invariants(G)
    cyc = all_cyclic_subgroups(G)
    maxc = maximal_cyclic_subgroups(G)
    subs = all_subgroups(G)
    rep.result = ab
    rep.extra_result = {
        "order": str(G.order),
        "exponent": str(G.exponent),
        "abelian": G.is_abelian(),
        "subgroups": str(len(subs)),
        "cyclic_subgroups": [_vec_json(C.elements) for C in cyc],
        "maximal_cyclic_subgroups": [_vec_json(C.elements) for C in maxc],
    }
    rep.text += [
        f"group {G.label}: order {G.order}, exponent {G.exponent}, {'abelian' if G.is_abelian() else 'non-abelian'}",
        f"abelianization: {ab}",
        f"subgroups: {len(subs)}; cyclic: {len(cyc)}; maximal cyclic: {len(maxc)}",
    ]
    for C in maxc:
        rep.text.append(f"  maximal cyclic <{C.generator()}> = {list(C.elements)}")


def _cmd_cohomology(cfg: RunConfig, rep: _Report) -> None:
    M, n = cfg.lattice_obj, cfg.degree
    if n == 0:
        rank, basis = h0(M)
        rep.result = FinAbGroup((), rank)
        rep.generators = basis
        rep.text.append(f"H^0({M.group.label}, {cfg.lattice}) = {rep.result}")
        if cfg.certify:
            for i, v in enumerate(basis):
                fixed = all(list(M.action(g) @ list(v)) == list(v) for g in range(M.group.order))
                rep.add_check(f"generator {i} is G-fixed", fixed)
        return
    H = hn(M, n)
    rep.result = H.structure
    rep.generators = H.generators
    rep.text.append(f"H^{n}({M.group.label}, {cfg.lattice}) = {H.structure}")
    if cfg.certify:
        for i, (z, t) in enumerate(zip(H.generators, H.structure.torsion)):
            rep.add_check(f"generator {i} is a cocycle", H.is_cocycle(z))
            rep.add_check(f"generator {i} has order {t}", H.is_coboundary([t * x for x in z])
                          and all(not H.is_coboundary([(t // q) * x for x in z]) for q in _primes(t)))


def _primes(t: int) -> list[int]:
    return [q for q in range(2, t + 1) if t % q == 0 and all(q % r for r in range(2, q))]


def _cmd_sha(cfg: RunConfig, rep: _Report) -> None:
    G, M = cfg.group_obj, cfg.lattice_obj
    res = sha2_cycl(G, M, cfg.strategy)
    rep.result = res.structure
    rep.generators = [list(z) for z in res.generators]
    rep.extra_result = {
        "h2": _group_json(res.h2.structure),
        "strategy": res.strategy,
        "subgroups_consulted": [_vec_json(C.elements) for C in res.subgroups],
    }
    rep.text += [
        f"H^2({G.label}, {cfg.lattice}) = {res.h2.structure}",
        f"Sha^2_cycl = {res.structure}   (strategy {res.strategy}, {len(res.subgroups)} cyclic subgroups)",
    ]
    if cfg.certify:
        cert = certify(res)
        for c in cert.checks:
            where = f" on {list(c.subgroup)}" if c.subgroup is not None else ""
            who = "combinations" if c.generator < 0 else f"generator {c.generator}"
            rep.add_check(f"{who}: {c.kind}{where}", c.passed, c.detail)
        rep.text.append(cert.summary())


def _cmd_verify(cfg: RunConfig, rep: _Report) -> None:
    def progress(check):
        rep.add_check(check.name, check.passed, check.detail)

    out = run_scenario(cfg.scenario, cfg.p, cfg.n, strategy=cfg.strategy, progress=progress)
    rep.result = out.result
    if rep.checks is None:
        rep.checks = []
    rep.text.append(f"scenario {cfg.scenario} (p = {cfg.p}, n = {out.n}): Sha^2_cycl = {out.result}")
    rep.text.append("all checks passed" if out.passed else "SOME CHECKS FAILED")


def _cmd_table(cfg: RunConfig, rep: _Report) -> None:
    keys = cfg.criteria or tuple(sorted(acceptance.CRITERIA))
    rows = []
    rep.extra_result = {"criteria": rows}
    rep.result = FinAbGroup()
    rep.text.append(f"{'#':>2}  {'status':6}  {'seconds':>8}  criterion / value (expected)")
    for k in keys:
        r = acceptance.run_criterion(k)
        rows.append({
            "number": str(r.number),
            "title": r.title,
            "passed": r.passed,
            "value": r.value,
            "expected": r.expected,
            "milliseconds": str(int(r.seconds * 1000)) if cfg.timing else "0",
        })
        rep.add_check(f"criterion {r.number}: {r.title}", r.passed, f"{r.value} (expected {r.expected})")
        rep.text.append(f"{r.number:>2}  {'PASS' if r.passed else 'FAIL':6}  {r.seconds:8.2f}  {r.title}")
        rep.text.append(f"{'':20}{r.value}  (expected {r.expected})")


_COMMANDS = {
    "group": _cmd_group,
    "cohomology": _cmd_cohomology,
    "sha-cycl": _cmd_sha,
    "verify": _cmd_verify,
    "paper-table": _cmd_table,
}


def _inputs(cfg: RunConfig) -> dict:
    out: dict[str, Any] = {}
    if cfg.group is not None:
        out["group"] = cfg.group
    if cfg.lattice is not None:
        out["lattice"] = cfg.lattice
    if cfg.degree is not None:
        out["degree"] = str(cfg.degree)
    if cfg.command in ("sha-cycl", "verify"):
        out["strategy"] = cfg.strategy
    if cfg.command in ("cohomology", "sha-cycl"):
        out["certify"] = cfg.certify
    if cfg.command == "verify":
        out["scenario"] = cfg.scenario
        out["p"] = str(cfg.p)
        out["n"] = None if cfg.n is None else str(cfg.n)
    if cfg.command == "paper-table":
        out["criteria"] = [str(k) for k in (cfg.criteria or sorted(acceptance.CRITERIA))]
    return out


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a parsed configuration; returns ``(exit code, output text)``."""
    if cfg.command in ("group", "cohomology", "sha-cycl") and cfg.group_obj is None:
        cfg.group_obj = parse_group_spec(cfg.group)
    if cfg.command in ("cohomology", "sha-cycl") and cfg.lattice_obj is None:
        cfg.lattice_obj = parse_lattice_spec(cfg.group_obj, cfg.lattice)
    rep = _Report(cfg.command, _inputs(cfg))
    start = time.monotonic()
    try:
        with time_budget(cfg.time_budget):
            _COMMANDS[cfg.command](cfg, rep)
    except BudgetExceeded:
        rep.exit_code = EXIT_BUDGET
        rep.error = f"time budget of {cfg.time_budget:g} s exceeded; report is partial"
    elapsed = int((time.monotonic() - start) * 1000) if cfg.timing else 0
    return rep.exit_code, rep.render(cfg.json, elapsed)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except (_UsageError, SpecSyntaxError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (GroupError, ValueError) as exc:
        print(f"shacycl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    code, text = run(cfg)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
