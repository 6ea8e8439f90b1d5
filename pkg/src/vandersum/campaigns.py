"""Batch verification campaigns behind the command-line front end.

A campaign expands its config into cells, runs each cell (optionally in a
process pool) and assembles a report.  Every cell draws its point from a
seed derived from ``(seed, cell id)``, so the split across workers never
changes a result.  All wall-clock figures live in keys ending in ``_ns``.
"""

from __future__ import annotations

import difflib
import hashlib
import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import comb
from typing import Any, Callable

from sympy import isprime

from . import fixtures
from .errors import ConfigError
from .identity import (DEFAULT_GUARD, closed_sum, lhs_brute, n2_shape, reduced_sum_sides,
                       rhs_closed, run_identity, zerosum_value)
from .scalars import MAX_MODULUS_BITS, Domain, EvalPoint, sample_admissible
from .sequences import lex_compare, up_sequences
from .subsets import SubsetMask
from .symfunc import ALL_LEMMAS, lemma_check, lemma_grid, pieri_sides, product_expansion_terms
from .tableau import cancellation_analysis, cancellation_value, r_matrix

COMMANDS = ("verify", "reduced", "zerosum", "lemmas", "pieri", "rmatrix", "cancel", "bench", "examples")
BENCH_MAX_GAUSS_N = 1000


@dataclass
class CampaignConfig:
    command: str
    n: tuple[int, ...] = (2,)
    N: tuple[int, ...] = (2,)
    k: tuple[int, ...] = (1,)
    bound: int | None = None
    p: int | None = None
    domain: str = "gauss-rational"
    modulus: int | None = None
    trials: int = 1
    seed: int = 0
    guard: int = DEFAULT_GUARD
    suite: str = "all"
    max_n: int = 4
    max_exponent: int = 8
    out: str | None = None
    threads: int = 1

    def echo(self) -> dict:
        """The config as it appears in the report; output path and thread count are left out."""
        d = asdict(self)
        d.pop("out")
        d.pop("threads")
        for key in ("n", "N", "k"):
            d[key] = list(d[key])
        return d


@dataclass
class Report:
    config: dict
    cells: list[dict] = field(default_factory=list)
    wall_ns: int = 0

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.cells)

    def to_dict(self) -> dict:
        return {"config": self.config, "cells": self.cells, "pass": self.passed,
                "wall_ns": self.wall_ns}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def strip_timing(obj: Any) -> Any:
    """Drop every ``*_ns`` key, recursively."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if not k.endswith("_ns")}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def parse_range(text: str) -> tuple[int, ...]:
    """``"3"``, ``"1-5"`` or ``"1,3,5"`` (ranges inclusive)."""
    out: list[int] = []
    try:
        for part in str(text).split(","):
            part = part.strip()
            if not part:
                continue
            if "-" in part[1:]:
                lo, hi = part.split("-", 1) if not part.startswith("-") else (part, part)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise ConfigError(f"cannot read {text!r} as an integer range (use 3, 1-5 or 1,3,5)") from None
    if not out:
        raise ConfigError(f"range {text!r} is empty")
    return tuple(out)


def cell_seed(seed: int, cell_id: str) -> int:
    digest = hashlib.sha256(f"{seed}:{cell_id}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def validate(cfg: CampaignConfig) -> Domain:
    if cfg.command not in COMMANDS:
        raise ConfigError(f"unknown command {cfg.command!r}; choose from {', '.join(COMMANDS)}")
    if cfg.trials < 1:
        raise ConfigError("--trials must be at least 1")
    if cfg.threads < 1:
        raise ConfigError("--threads must be at least 1")
    for name in ("n", "N", "k"):
        if not getattr(cfg, name):
            raise ConfigError(f"--{name} range is empty")
    if min(cfg.n) < 1:
        raise ConfigError("--n values must be at least 1")
    if min(cfg.N) < 0 or min(cfg.k) < 0:
        raise ConfigError("--N and --k values must be nonnegative")
    if cfg.domain not in ("gauss-rational", "gf"):
        raise ConfigError(f"unknown domain {cfg.domain!r}; choose gauss-rational or gf")
    if cfg.domain == "gauss-rational":
        if cfg.modulus is not None:
            raise ConfigError("--modulus only applies to --domain gf")
        domain = Domain("gauss-rational")
    else:
        if cfg.modulus is not None:
            if cfg.modulus.bit_length() > MAX_MODULUS_BITS:
                raise ConfigError(f"--modulus must fit in {MAX_MODULUS_BITS} bits")
            if not isprime(cfg.modulus):
                raise ConfigError(f"--modulus {cfg.modulus} is not prime")
            if cfg.modulus <= 2 * max(cfg.n) ** 2:
                raise ConfigError(f"--modulus must exceed 2*n^2 = {2 * max(cfg.n) ** 2}")
        domain = Domain("gf", cfg.modulus)
    if cfg.command == "lemmas" and cfg.suite != "all" and cfg.suite not in ALL_LEMMAS:
        raise ConfigError(f"unknown suite {cfg.suite!r}; choose all or one of {', '.join(ALL_LEMMAS)}")
    if cfg.command == "rmatrix" and (cfg.bound is None or cfg.p is None):
        raise ConfigError("rmatrix needs --k, --bound and --p")
    if cfg.command == "bench" and domain.kind == "gauss-rational" and max(cfg.N) > BENCH_MAX_GAUSS_N:
        raise ConfigError(f"bench refuses gauss-rational for N > {BENCH_MAX_GAUSS_N} "
                          "(coefficient growth swamps the timing); use --domain gf")
    return domain


# -- cell runners --------------------------------------------------------------
# Each runner takes (params, domain, seed, trials, guard) and returns a dict
# that must contain "pass".

def _points(n: int, domain: Domain, seed: int, trials: int) -> list[EvalPoint]:
    return [sample_admissible(n, domain, seed + t) for t in range(trials)]


def _run_verify(pr, domain, seed, trials, guard):
    a = sample_admissible(pr["n"], domain, seed)
    rep = run_identity(a, pr["N"], domain.tag, seed, guard=guard)
    out = rep.to_dict()
    out["point"] = [str(x) for x in a]
    out["pass"] = bool(rep.equal)
    return out


def _run_reduced(pr, domain, seed, trials, guard):
    a = sample_admissible(pr["n"], domain, seed)
    sides = reduced_sum_sides(a, pr["N"], guard)
    ok = sides["strict"] == sides["closed"] == sides["weak"]
    return {"point": [str(x) for x in a], **{k: str(v) for k, v in sides.items()}, "pass": ok}


def _run_zerosum(pr, domain, seed, trials, guard):
    a = sample_admissible(pr["n"], domain, seed)
    value = zerosum_value(a)
    return {"point": [str(x) for x in a], "value": str(value), "pass": value.is_zero()}


def _run_lemma(pr, domain, seed, trials, guard):
    params = dict(pr["params"])
    if "m" in params:
        params["m"] = tuple(params["m"])
    results = [lemma_check(pr["lemma"], a, params) for a in _points(params["n"], domain, seed, trials)]
    return {"points": len(results), "pass": all(results)}


def _run_pieri(pr, domain, seed, trials, guard):
    m = tuple(pr["m"])
    J = SubsetMask.full(len(m))
    ok = True
    for a in _points(len(m), domain, seed, trials):
        lhs, rhs = pieri_sides(pr["l"], m, J, a)
        ok = ok and lhs == rhs
    return {"pass": ok}


def _run_rmatrix(pr, domain, seed, trials, guard):
    R = r_matrix(pr["k"], pr["bound"], pr["p"])
    asc = r_matrix(pr["k"], pr["bound"], pr["p"], ascending=True)
    triangular = all(v == 0 or lex_compare(r, c) <= 0 for (r, c), v in R.entries.items())
    unit = all(R[(x, x)] == 1 for x in R.order)
    return {**R.to_dict(), "text": R.to_text(), "order_independent": R.entries == asc.entries,
            "triangular": triangular, "unit_diagonal": unit,
            "pass": triangular and unit and R.entries == asc.entries}


def _run_cancel(pr, domain, seed, trials, guard):
    m = tuple(pr["m"])
    analysis = cancellation_analysis(m)
    n = pr["n"]
    I = SubsetMask.of(n, range(1, len(m) + 1))
    zero = all(cancellation_value(m, I, a).is_zero() for a in _points(n, domain, seed, trials))
    return {"terms": len(analysis.terms), "nonzero": len(analysis.nonzero),
            "pairs": [list(p) for p in analysis.pairs], "perfect": analysis.perfect,
            "sum_zero": zero, "pass": analysis.perfect and zero}


def _run_bench(pr, domain, seed, trials, guard):
    n, N = pr["n"], pr["N"]
    a = sample_admissible(n, domain, seed)
    t0 = time.perf_counter_ns()
    rhs = rhs_closed(a, N)
    rhs_ns = time.perf_counter_ns() - t0
    out = {"point": [str(x) for x in a], "rhs": str(rhs), "rhs_ns": rhs_ns,
           "tuples": comb(N, n), "lhs": None, "lhs_ns": None, "equal": None}
    if comb(N, n) <= guard:
        t0 = time.perf_counter_ns()
        lhs = lhs_brute(a, N, guard=guard)
        out["lhs_ns"] = time.perf_counter_ns() - t0
        out["lhs"] = str(lhs)
        out["equal"] = lhs == rhs
    out["skipped_lhs"] = out["lhs"] is None
    out["pass"] = out["equal"] is not False
    return out


def _diff(expected, got) -> list[str]:
    exp = [str(x) for x in expected]
    act = [str(x) for x in got]
    return list(difflib.unified_diff(exp, act, "golden", "computed", lineterm=""))


def _run_example(pr, domain, seed, trials, guard):
    name = pr["example"]
    if name == "expansion-3-7":
        got = product_expansion_terms(3, 7)
        diff = _diff(fixtures.EXPANSION_3_7, got)
        return {"terms": len(got), "diff": diff, "pass": not diff}
    if name == "rmatrix-3-4-6":
        R = r_matrix(3, 4, 6)
        diff = _diff(fixtures.R_3_4_6_ORDER, R.order) + _diff(fixtures.R_3_4_6, R.dense())
        return {"text": R.to_text(), "diff": diff, "pass": not diff}
    if name == "cancel-024":
        analysis = cancellation_analysis((0, 2, 4))
        got = sorted(analysis.signed_terms())
        diff = _diff(sorted(fixtures.CANCEL_024), got)
        I = SubsetMask.full(3)
        zero = all(cancellation_value((0, 2, 4), I, a).is_zero() for a in _points(3, domain, seed, trials))
        return {"diff": diff, "sum_zero": zero, "pass": not diff and zero}
    if name == "two-variable":
        a = EvalPoint.of(fixtures.N2_POINT, domain)
        lhs = lhs_brute(a, fixtures.N2_HORIZON)
        rhs = rhs_closed(a, fixtures.N2_HORIZON)
        fixed = lhs == rhs == fixtures.N2_VALUE
        shape = all(n2_shape(b, N) == closed_sum(b, N)
                    for b in _points(2, domain, seed, trials) for N in range(0, 6))
        return {"lhs": str(lhs), "rhs": str(rhs), "shape": shape, "pass": fixed and shape}
    raise ValueError(f"unknown example {name!r}")


RUNNERS: dict[str, Callable] = {
    "verify": _run_verify, "bench": _run_bench, "reduced": _run_reduced,
    "zerosum": _run_zerosum, "lemmas": _run_lemma, "pieri": _run_pieri,
    "rmatrix": _run_rmatrix, "cancel": _run_cancel, "examples": _run_example,
}
EXAMPLES = ("expansion-3-7", "rmatrix-3-4-6", "cancel-024", "two-variable")


def plan(cfg: CampaignConfig) -> list[tuple[str, dict]]:
    """``(cell id, params)`` for every cell, in report order."""
    cmd = cfg.command
    cells = []
    if cmd in ("verify", "bench", "reduced"):
        for n in cfg.n:
            for N in cfg.N:
                if cmd == "reduced" and (n < 2 or N < 1):
                    continue
                for t in range(cfg.trials if cmd != "bench" else 1):
                    cells.append((f"{cmd}/n={n}/N={N}/t={t}", {"n": n, "N": N}))
    elif cmd == "zerosum":
        for n in cfg.n:
            for t in range(cfg.trials):
                cells.append((f"zerosum/n={n}/t={t}", {"n": n}))
    elif cmd == "lemmas":
        suites = ALL_LEMMAS if cfg.suite == "all" else (cfg.suite,)
        for which in suites:
            for params in lemma_grid(which, cfg.max_n, cfg.max_exponent):
                tag = ",".join(f"{k}={v}" for k, v in params.items())
                if "m" in params:
                    params = {**params, "m": list(params["m"])}
                cells.append((f"lemmas/{which}/{tag}", {"lemma": which, "params": params}))
    elif cmd == "pieri":
        for n in cfg.n:
            top = cfg.bound if cfg.bound is not None else n + 2
            for m in combinations(range(top + 1), n):
                for l in range(n + 1):
                    cells.append((f"pieri/l={l}/m={m}", {"l": l, "m": list(m)}))
    elif cmd == "rmatrix":
        for k in cfg.k:
            cells.append((f"rmatrix/k={k}/bound={cfg.bound}/p={cfg.p}",
                          {"k": k, "bound": cfg.bound, "p": cfg.p}))
    elif cmd == "cancel":
        for n in cfg.n:
            for k in cfg.k:
                if not 1 <= k <= n:
                    continue
                for m in up_sequences(k, n - k):
                    if m[0] == 0:
                        cells.append((f"cancel/n={n}/m={m}", {"n": n, "m": list(m)}))
    elif cmd == "examples":
        for name in EXAMPLES:
            cells.append((f"examples/{name}", {"example": name}))
    return cells


def _run_cell(command: str, cell_id: str, params: dict, domain: Domain,
              seed: int, trials: int, guard: int) -> dict:
    cs = cell_seed(seed, cell_id)
    t0 = time.perf_counter_ns()
    try:
        result = RUNNERS[command](params, domain, cs, trials, guard)
    except Exception as exc:  # recorded as a failed cell, never a crash
        result = {"pass": False, "error": f"{type(exc).__name__}: {exc}"}
    result["cell_ns"] = time.perf_counter_ns() - t0
    result["id"] = cell_id
    result["seed"] = cs
    return result


def execute(cfg: CampaignConfig) -> Report:
    """Run a campaign; raises :class:`ConfigError` on an invalid config."""
    domain = validate(cfg)
    t0 = time.perf_counter_ns()
    cells = plan(cfg)
    args = [(cfg.command, cid, params, domain, cfg.seed, cfg.trials, cfg.guard) for cid, params in cells]
    if cfg.threads > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(_run_cell, *zip(*args)))
    else:
        results = [_run_cell(*a) for a in args]
    report = Report(cfg.echo(), results)
    report.wall_ns = time.perf_counter_ns() - t0
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(report.to_json() + "\n")
    return report


def summary(report: Report) -> str:
    counts = Counter("pass" if c["pass"] else "FAIL" for c in report.cells)
    lines = [f"{c['id']}: {'pass' if c['pass'] else 'FAIL'}"
             + (f" ({c['error']})" if "error" in c else "") for c in report.cells]
    lines.append(f"{counts['pass']} passed, {counts['FAIL']} failed")
    return "\n".join(lines)
