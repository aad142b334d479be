"""Command-line interface: scenario checks, micro-benchmarks, fixture export.

Exit codes: 0 all checks passed (held or inconclusive), 1 at least one check
failed or errored, 2 the scenario could not be ingested.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

import yaml

from . import __version__
from .fixtures import FIXTURES, get_fixture, random_subspace
from .grassmann import dist_d, dist_delta, lambda_angle
from .scenario import IngestError, apply_overrides, load_scenario, render_report, report_document, run_scenario


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stratkit",
        description="Check sampled regularity conditions on stratified sets "
                    "defined by closed-form charts.")
    parser.add_argument("--version", action="version",
                        version=f"stratkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run the checks declared in a scenario file")
    check.add_argument("scenario", help="path to a scenario YAML file")
    check.add_argument("--report", metavar="PATH",
                       help="write the machine-readable JSON report here")
    check.add_argument("--shells", type=int, help="override shells per schedule")
    check.add_argument("--samples", type=int, help="override samples per shell")
    check.add_argument("--seed", type=int, help="override every schedule seed")
    check.add_argument("--r0", type=float, help="override the outer shell radius")
    check.add_argument("--rho", type=float, help="override the shell shrink factor")
    check.add_argument("--eps-b", type=float, dest="eps_b",
                       help="override the final-shell defect bound")
    check.add_argument("--tol", type=float,
                       help="override the treat-as-zero floor for trend fits")

    bench = sub.add_parser("bench", help="time the subspace metrics on random inputs")
    bench.add_argument("--seed", type=int, default=20240101)
    bench.add_argument("--repeats", type=int, default=200,
                       help="timed evaluations per (metric, n)")

    emit = sub.add_parser("emit-fixture", help="write a named fixture scenario file")
    emit.add_argument("name", help=f"one of: {', '.join(sorted(FIXTURES))}")
    emit.add_argument("--out", metavar="PATH",
                      help="output path (default: <name>.yaml)")
    return parser


def _cmd_check(args) -> int:
    t0 = time.perf_counter()
    try:
        scn, raw = load_scenario(args.scenario)
    except IngestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot read scenario: {exc}", file=sys.stderr)
        return 2
    sched_over = {k: getattr(args, k) for k in
                  ("shells", "samples", "seed", "r0", "rho")
                  if getattr(args, k) is not None}
    thr_over = {}
    if args.eps_b is not None:
        thr_over["eps_b"] = args.eps_b
    if args.tol is not None:
        thr_over["zero_floor"] = args.tol
    scn = apply_overrides(scn, sched_over, thr_over)

    results = run_scenario(scn)
    failed = 0
    for check, verdict, error in results:
        if error is not None:
            print(f"{check.label}: ERROR {error}")
            failed += 1
            continue
        line = f"{check.label}: {verdict.verdict}"
        if verdict.fitted_trend is not None:
            line += f" (trend {verdict.fitted_trend:+.3f})"
        print(line)
        if verdict.verdict == "fails":
            failed += 1
            if verdict.witness is not None:
                x, y = verdict.witness
                print(f"  witness: x={list(x)} y={list(y)}")
        for note in verdict.notes:
            print(f"  note: {note}")

    doc = report_document(scn, raw, results, seed_override=args.seed)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(render_report(doc))
    elapsed = (time.perf_counter() - t0) * 1e3
    print(f"ran {len(results)} check(s) in {elapsed:.1f} ms", file=sys.stderr)
    return 1 if failed else 0


def _cmd_bench(args) -> int:
    metrics = {
        "dist_d": lambda P, Q: dist_d(P, Q),
        "dist_delta": lambda P, Q: dist_delta(P, Q),
        "lambda_angle": lambda P, Q: lambda_angle(P, Q),
    }
    print(f"{'metric':<14}{'n':>4}{'median us':>12}{'p90 us':>10}")
    for n in (3, 4, 8, 16):
        k = max(1, n // 2)
        pairs = [(random_subspace(n, k, args.seed + 2 * i),
                  random_subspace(n, k, args.seed + 2 * i + 1))
                 for i in range(32)]
        for name, fn in metrics.items():
            times = []
            for r in range(args.repeats):
                P, Q = pairs[r % len(pairs)]
                t0 = time.perf_counter()
                fn(P, Q)
                times.append((time.perf_counter() - t0) * 1e6)
            med = statistics.median(times)
            p90 = sorted(times)[int(0.9 * (len(times) - 1))]
            print(f"{name:<14}{n:>4}{med:>12.1f}{p90:>10.1f}")
    return 0


def _cmd_emit(args) -> int:
    try:
        fix = get_fixture(args.name)
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = args.out or f"{args.name}.yaml"
    text = yaml.safe_dump(fix.scenario, sort_keys=False, default_flow_style=None)
    with open(out, "w") as fh:
        fh.write(text)
    print(f"wrote {out}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "check":
        return _cmd_check(args)
    if args.command == "bench":
        return _cmd_bench(args)
    return _cmd_emit(args)


if __name__ == "__main__":
    sys.exit(main())
