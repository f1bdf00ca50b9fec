"""Command-line front end: JSON report on stdout, short summary on stderr.

Exit codes: 0 every check passed, 1 some check failed, 2 usage or domain
error, 3 an enumeration or symbolic computation would exceed the budget.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Callable, Sequence

from . import suites
from .errors import BudgetExceeded, DegenerateInputError, DomainError
from .report import Check, VerificationReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _common(p: argparse.ArgumentParser, seed: bool = False, budget: bool = False) -> None:
    p.add_argument("--out", type=Path, help="also write the JSON report to this file")
    if seed:
        p.add_argument("--seed", type=int, default=0, help="64-bit seed for every sampler (default 0)")
    if budget:
        p.add_argument("--budget", type=int, default=None,
                       help="size cap for enumerations and symbolic expansion (default $RSLV_BUDGET or 10^6)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rslv", description="Exact verification of local identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-residue", help="trace, closed form and both residue evaluations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=suites.MODES, default="symbolic")
    p.add_argument("--seeds", type=int, default=10, help="numeric instances (numeric mode)")
    _common(p, seed=True, budget=True)

    p = sub.add_parser("verify-degenerate", help="degenerate-term identity and the inner-sum table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--order", type=int, default=4, help="(U, W) truncation for the series cross-check")
    p.add_argument("--mode", choices=suites.MODES, default=None,
                   help="default: symbolic for n <= 3, numeric otherwise")
    p.add_argument("--seeds", type=int, default=10, help="numeric instances (numeric mode)")
    p.add_argument("--drop-unit-product", action="store_true",
                   help="omit the unit-product constraint on the second parameter set")
    _common(p, seed=True)

    p = sub.add_parser("verify-whittaker", help="restriction recursion of spherical Whittaker values")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-weight", type=int, default=4)
    _common(p)

    p = sub.add_parser("verify-zeta", help="torus-sum zeta series against Euler products")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--kind", choices=suites.ZETA_KINDS, default="both")
    _common(p)

    p = sub.add_parser("classify-cosets", help="exhaustive double-coset audit over F_q")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--variant", choices=suites.COSET_VARIANTS, default="GxG")
    p.add_argument("--trials", type=int, default=10 ** 4, help="random triples for the invariance check")
    _common(p, seed=True, budget=True)

    p = sub.add_parser("verify-index", help="congruence subgroup index and volume identity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    _common(p, budget=True)

    p = sub.add_parser("verify-support", help="valuation of the xi(t) parameter on sampled level elements")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--samples", type=int, default=500)
    _common(p, seed=True)

    p = sub.add_parser("verify-bruhat", help="product identity of big-cell factorizations")
    p.add_argument("--n", type=int, required=True)
    _common(p)

    p = sub.add_parser("verify-all", help="run a whole profile")
    p.add_argument("--profile", choices=sorted(suites.PROFILES), default="desk")
    _common(p, seed=True, budget=True)
    return parser


def _params(args: argparse.Namespace) -> dict:
    return {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(vars(args).items())
            if k not in ("command", "out")}


def _dispatch(args: argparse.Namespace) -> list[Check]:
    c = args.command
    if c == "verify-residue":
        return suites.run_residue(args.n, args.mode, args.seeds, args.seed, args.budget)
    if c == "verify-degenerate":
        return suites.run_degenerate(args.n, args.order, args.mode, args.seeds, args.seed, args.drop_unit_product)
    if c == "verify-whittaker":
        return suites.run_whittaker(args.m, args.max_weight)
    if c == "verify-zeta":
        return suites.run_zeta(args.m, args.order, args.kind)
    if c == "classify-cosets":
        return suites.run_cosets(args.n, args.q, args.variant, args.budget, args.seed, args.trials)
    if c == "verify-index":
        return suites.run_index(args.n, args.p, args.e, args.budget)
    if c == "verify-support":
        return suites.run_support(args.n, args.p, args.e, args.samples, args.seed)
    if c == "verify-bruhat":
        return suites.run_bruhat(args.n)
    if c == "verify-all":
        checks: dict[str, Check] = {}
        for _, section in suites.PROFILES[args.profile](args.seed, args.budget):
            for chk in section:
                checks[chk.name] = chk
        return list(checks.values())
    raise DomainError(f"unknown command {c}")


def _summary(report: VerificationReport) -> str:
    counts = {s: sum(c.status == s for c in report.checks) for s in ("pass", "fail", "skipped")}
    lines = [f"{report.command}: {counts['pass']} passed, {counts['fail']} failed, "
             f"{counts['skipped']} skipped in {report.elapsed_ms} ms"]
    lines += [f"  FAIL {c.name} {c.detail}".rstrip() for c in report.sorted_checks() if c.status == "fail"]
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None, stdout: Callable[[str], object] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    write = stdout or (lambda s: sys.stdout.write(s + "\n"))
    start = time.perf_counter()
    try:
        checks = _dispatch(args)
    except BudgetExceeded as exc:
        print(f"rslv: budget refused: {exc.what} needs about {exc.estimate} (budget {exc.budget}); "
              "raise --budget or RSLV_BUDGET", file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, DegenerateInputError) as exc:
        print(f"rslv: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = int((time.perf_counter() - start) * 1000)
    report = VerificationReport(args.command, _params(args), checks, elapsed)
    text = report.to_json()
    write(text)
    if args.out is not None:
        args.out.write_text(text + "\n", encoding="utf-8")
    print(_summary(report), file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
