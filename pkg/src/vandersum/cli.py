"""Command-line entry point: ``vandersum <command> [flags]``.

Exit status is 0 when every cell passes, 1 when any cell fails and 2 on a
configuration error.
"""

from __future__ import annotations

import argparse
import sys

from .campaigns import COMMANDS, CampaignConfig, execute, parse_range, summary
from .errors import ConfigError
from .identity import DEFAULT_GUARD

HELP = {
    "verify": "brute-force sum against the closed form at sampled points",
    "reduced": "the sum with x_1 summed out (strict and weak ranges) against the closed sum",
    "zerosum": "the residual alternating identity",
    "lemmas": "vanishing and reduction lemma grids",
    "pieri": "dual Pieri rule for power determinants",
    "rmatrix": "print the transition matrix R for one weight",
    "cancel": "pairwise cancellation of the remainder determinants",
    "bench": "time brute force against the closed form",
    "examples": "reproduce the worked examples and diff against golden values",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vandersum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=HELP[name])
        p.add_argument("--n", default="2", help="number of variables: 3, 1-5 or 1,3,5")
        p.add_argument("--N", default="2", help="summation horizon, same syntax as --n")
        p.add_argument("--k", default="1" if name != "rmatrix" else "3", help="subset size(s)")
        p.add_argument("--bound", type=int, default=None, help="entry bound (rmatrix, pieri)")
        p.add_argument("--p", type=int, default=None, help="weight (rmatrix)")
        p.add_argument("--domain", default="gauss-rational", choices=["gauss-rational", "gf"])
        p.add_argument("--modulus", type=int, default=None, help="prime modulus for gf (default 2^61-1)")
        p.add_argument("--trials", type=int, default=1, help="points per cell")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="largest brute-force tuple count")
        p.add_argument("--suite", default="all", help="lemmas: all, L1, L2, L3, L4, L5, L5cor, L6, L6cor")
        p.add_argument("--max-n", type=int, default=4, help="lemmas: largest n in the grid")
        p.add_argument("--max-exponent", type=int, default=8, help="lemmas: exponent cap for L6")
        p.add_argument("--out", default=None, help="write the JSON report here")
        p.add_argument("--threads", type=int, default=1, help="worker processes for the cells")
        p.add_argument("--quiet", action="store_true", help="print only the final tally")
    return parser


def config_from_args(ns: argparse.Namespace) -> CampaignConfig:
    return CampaignConfig(
        command=ns.command, n=parse_range(ns.n), N=parse_range(ns.N), k=parse_range(ns.k),
        bound=ns.bound, p=ns.p, domain=ns.domain, modulus=ns.modulus, trials=ns.trials,
        seed=ns.seed, guard=ns.guard, suite=ns.suite, max_n=ns.max_n,
        max_exponent=ns.max_exponent, out=ns.out, threads=ns.threads,
    )


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        report = execute(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if cfg.command in ("rmatrix", "examples"):
        for cell in report.cells:
            if "text" in cell:
                print(cell["id"])
                print(cell["text"])
            for line in cell.get("diff", []):
                print(line)
    if cfg.command == "bench":
        for cell in report.cells:
            if cell.get("lhs_ns") and cell.get("rhs_ns"):
                print(f"{cell['id']}: rhs {cell['rhs_ns'] / 1e6:.3f} ms, "
                      f"lhs {cell['lhs_ns'] / 1e6:.1f} ms, speedup {cell['lhs_ns'] / cell['rhs_ns']:.0f}x")
            elif cell.get("rhs_ns"):
                print(f"{cell['id']}: rhs {cell['rhs_ns'] / 1e6:.3f} ms, lhs skipped ({cell['tuples']} tuples)")
    text = summary(report)
    print(text.splitlines()[-1] if ns.quiet else text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
