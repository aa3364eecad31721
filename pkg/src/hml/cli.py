"""``hml`` command line: verify suites, refine kernels, replay the counterexample.

Exit codes: 0 all asserted verdicts pass, 1 an inequality fails, 2 bad input.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from fractions import Fraction

from .io import load_matrix
from .kernels import convergence_trend, parse_kernel, refine_and_check
from .matrix import ConfigurationError, Constraint
from .report import ABS_TOL, REL_TOL, _encode, bundle, write_report
from .spectral import NormKind, numerical_radius, operator_norm, spectral_radius
from .suites import (COUNTER_A, COUNTER_B, SUITES, Sweep, get_suite, resolve_weight_mode,
                     run_counterexample, run_sweep)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
COUNTER_TOL = 1e-12
MAX_PRINTED_FAILURES = 10


def _number(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _range(text: str) -> tuple[int, int]:
    """``a..b`` or a single integer."""
    try:
        lo, _, hi = text.partition("..")
        return int(lo), int(hi or lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _print_failures(reports) -> None:
    failed = [r for r in reports if not r.passed]
    for rep in failed[:MAX_PRINTED_FAILURES]:
        links = "; ".join(f"{v.left} <= {v.right} (slack {v.slack:.3g})" for v in rep.failures)
        print(f"FAIL {_encode(rep.digest)}: {links}", file=sys.stderr)
    if len(failed) > MAX_PRINTED_FAILURES:
        print(f"... {len(failed) - MAX_PRINTED_FAILURES} more failing trials", file=sys.stderr)


def _emit(doc, reports, args, kind: str) -> None:
    if args.out:
        write_report(doc, args.out, args.format)
    if args.figures:
        from .plotting import write_figures
        for path in write_figures(reports, args.figures, kind):
            print(f"figure: {path}")


def cmd_verify(args) -> int:
    mode = None if args.weights == "auto" else Constraint(args.weights)
    sweep = Sweep(seed=args.seed, trials=args.trials, dims=args.dims, ms=args.m,
                  densities=args.density, weight_mode=mode, rel_tol=args.tol,
                  abs_tol=args.abs_tol)
    if args.suite == "all":
        names = []
        for name, suite in SUITES.items():
            try:
                resolve_weight_mode(suite, mode)
            except ConfigurationError:
                continue  # e.g. sum1-only suites under --weights sumge1
            names.append(name)
    else:
        names = [get_suite(args.suite).name]
    start = time.perf_counter()
    reports = run_sweep(names, sweep)
    doc = bundle(args.suite, reports)
    _emit(doc, reports, args, "verify")
    s = doc["summary"]
    print(f"{args.suite}: {s['pass']} pass, {s['fail']} fail "
          f"({len(names)} suites, {time.perf_counter() - start:.2f} s)")
    _print_failures(reports)
    return EXIT_OK if s["fail"] == 0 else EXIT_FAIL


def cmd_kernels(args) -> int:
    kernels = [parse_kernel(k) for k in args.kernels.split(",") if k.strip()]
    params = {}
    if args.alpha is not None:
        params["alpha"] = args.alpha
    if args.beta is not None:
        params["beta"] = args.beta
    reports = refine_and_check(kernels, args.suite, args.grids, params)
    doc = bundle(args.suite, reports)
    _emit(doc, reports, args, "kernels")
    if args.csv:
        write_report(doc, args.csv, "csv")
    for rep in reports:
        print(f"grid_n={rep.digest['grid_n']}: {'pass' if rep.passed else 'FAIL'}")
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
    if len(reports) >= 3:
        stalled = [k for k, ok in convergence_trend(reports, factor=args.trend_factor).items() if not ok]
        print("trend: " + ("ok" if not stalled else "not shrinking for " + ", ".join(stalled)))
        if stalled and args.require_trend:
            code = EXIT_FAIL
    _print_failures(reports)
    return code


def cmd_counterexample(args) -> int:
    a = COUNTER_A.copy()
    if args.corrupt:
        a[0, 0] = 1.0  # makes ABA nonzero; the replay must then report a deviation
    rep = run_counterexample(args.alpha, a=a)
    lhs, rhs = (v for _, v in rep.quantities)
    print("A =", a.tolist())
    print("B =", COUNTER_B.tolist())
    print(f"alpha = {args.alpha:.17g}")
    print(f"lhs |A^(a) o B^(a) o A^(a)|_2 = {lhs:.17g}")
    print(f"rhs |ABA|_2^a = {rhs:.17g}")
    ok = abs(lhs - 1.0) <= COUNTER_TOL and abs(rhs) <= COUNTER_TOL and not rep.passed
    print("violation reproduced" if ok else "values deviate from lhs=1, rhs=0")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_inspect(args) -> int:
    a = load_matrix(args.file)
    est = spectral_radius(a)
    print(f"n = {a.shape[0]}")
    print(f"rho = {est.value:.17g}  (bracket [{est.cw_lower:.17g}, {est.cw_upper:.17g}])")
    for kind in NormKind:
        print(f"|A|_{kind.value} = {operator_norm(a, kind):.17g}")
    print(f"w = {numerical_radius(a):.17g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hml", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run seeded random trials of one or all suites")
    v.add_argument("--suite", default="all", help="all, or one of: " + ", ".join(SUITES))
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--dims", type=_range, default=(2, 8), help="matrix size range a..b")
    v.add_argument("--m", type=_range, default=(2, 5), help="operator count range a..b")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--density", type=_floats, default=(0.3, 0.7, 1.0))
    v.add_argument("--weights", choices=["auto", "sum1", "sumge1"], default="auto")
    v.add_argument("--tol", type=float, default=REL_TOL, help="relative tolerance per link")
    v.add_argument("--abs-tol", type=float, default=ABS_TOL)
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("kernels", help="discretize kernels on refining grids and check a suite")
    k.add_argument("--kernels", required=True, help="e.g. gauss,rational or gauss:0.5,rational:2")
    k.add_argument("--suite", required=True)
    k.add_argument("--grids", type=_ints, default=(16, 32, 64))
    k.add_argument("--alpha", type=_number)
    k.add_argument("--beta", type=_number)
    k.add_argument("--csv", help="also write the per-level CSV here")
    k.add_argument("--trend-factor", type=float, default=1.1)
    k.add_argument("--require-trend", action="store_true",
                   help="exit 1 when a quantity's change does not shrink")
    k.set_defaults(func=cmd_kernels)

    for q in (v, k):
        q.add_argument("--out", help="report path")
        q.add_argument("--format", choices=["json", "csv"], default="json")
        q.add_argument("--figures", metavar="DIR", help="write PNG figures into DIR")

    c = sub.add_parser("counterexample", help="replay the Jordan triple counterexample")
    c.add_argument("--alpha", type=_number, default=1 / 3)
    c.add_argument("--corrupt", action="store_true", help="self-test: perturb A, expect exit 1")
    c.set_defaults(func=cmd_counterexample)

    i = sub.add_parser("inspect", help="spectral quantities of a matrix JSON file")
    i.add_argument("file")
    i.set_defaults(func=cmd_inspect)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
