"""Command-line front end.

    truth-belief compute  --x X.json [--y Y.json] --q 2 --quantity entropy
    truth-belief sweep    --x X.json [--y Y.json] --q-min 0 --q-max 2 --steps 21
    truth-belief verify   --suite all --seed 42
    truth-belief minimize --x X.json --q 0.5

Exit codes: 0 success, 1 failed verification, 2 malformed input, 3 domain
error, 4 solver did not converge. Logs go to stderr; stdout carries only
results, so a fixed seed gives byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from . import __version__
from .dist import Distribution
from .exceptions import ConvergenceError, DomainError, ParseError
from .qcore import as_qparam
from .quantities import complexity, divergence, entropy
from .report import CSV_INFINITY, RunReport, format_number, load_distribution
from .suites import DEFAULT_N_MAX, SUITE_NAMES, run_suite
from .variational import SolverConfig, minimize_complexity

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_NO_CONVERGENCE = 4

QUANTITIES: Dict[str, Callable[..., float]] = {
    "entropy": lambda q, x, y: entropy(q, x),
    "complexity": complexity,
    "divergence": divergence,
}
SWEEP_HEADER = ("q", "entropy", "complexity", "divergence")


def _load_pair(args: argparse.Namespace):
    x = load_distribution(args.x, normalize=args.normalize)
    y = load_distribution(args.y, normalize=args.normalize) if args.y else None
    return x, y


def _new_report(command: str, args: argparse.Namespace) -> RunReport:
    report = RunReport(command=command, tool_version=__version__, seed=args.seed)
    report.add_input("x", getattr(args, "x", None))
    report.add_input("y", getattr(args, "y", None))
    return report


def _finish_report(report: RunReport, args: argparse.Namespace) -> None:
    if args.report is not None:
        report.write(args.report)


def cmd_compute(args: argparse.Namespace) -> int:
    x, y = _load_pair(args)
    if args.quantity != "entropy" and y is None:
        raise ParseError(f"{args.quantity} needs a belief distribution", field="--y")
    q = as_qparam(args.q)
    value = QUANTITIES[args.quantity](q, x, y)
    print(format_number(value))

    report = _new_report("compute", args)
    report.q_values = [q.q]
    report.results = [{"quantity": args.quantity, "value": float(value)}]
    _finish_report(report, args)
    return EXIT_OK


def _sweep_row(q: float, x: Distribution, y: Optional[Distribution]) -> List[str]:
    row = [format_number(q, CSV_INFINITY), format_number(entropy(q, x), CSV_INFINITY)]
    if y is None:
        return row + ["", ""]
    return row + [
        format_number(complexity(q, x, y), CSV_INFINITY),
        format_number(divergence(q, x, y), CSV_INFINITY),
    ]


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.steps < 1:
        raise DomainError(f"--steps must be at least 1, got {args.steps}")
    q_min, q_max = as_qparam(args.q_min).q, as_qparam(args.q_max).q
    if q_min > q_max:
        raise DomainError(f"--q-min {q_min!r} exceeds --q-max {q_max!r}")
    x, y = _load_pair(args)
    qs = [float(q) for q in np.linspace(q_min, q_max, args.steps)]

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(lambda q: _sweep_row(q, x, y), qs))
    else:
        rows = [_sweep_row(q, x, y) for q in qs]

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    writer.writerows(rows)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    outcomes = run_suite(args.suite, seed=args.seed, n_max=args.n_max, jobs=args.jobs)
    for outcome in outcomes:
        verdict = "PASS" if outcome.passed else "FAIL"
        print(f"{verdict} {outcome.name} (residual {format_number(outcome.residual)})")
    failed = sum(not o.passed for o in outcomes)
    print(f"{len(outcomes) - failed} passed, {failed} failed")

    report = _new_report("verify", args)
    report.suite_outcomes = [o.as_dict() for o in outcomes]
    _finish_report(report, args)
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def cmd_minimize(args: argparse.Namespace) -> int:
    x = load_distribution(args.x, normalize=args.normalize)
    q = as_qparam(args.q)
    config = SolverConfig(
        max_iterations=args.max_iterations,
        step_tolerance=args.step_tolerance,
        value_tolerance=args.tolerance,
        seed=args.seed,
    )
    result = minimize_complexity(q, x, config)
    h = entropy(q, x)
    gap = result.minimum_value - h

    minimizer = " ".join(
        f"{label}={format_number(p)}" for label, p in zip(result.minimizer.labels, result.minimizer.probs)
    )
    print(f"minimizer {minimizer}")
    print(f"minimum_value {format_number(result.minimum_value)}")
    print(f"entropy {format_number(h)}")
    print(f"gap {format_number(gap)}")
    print(f"iterations {result.iterations_used}")
    print(f"first_order_residual {format_number(result.first_order_residual)}")
    print(f"converged {str(result.converged).lower()}")
    print(f"degenerate_minimum {str(result.degenerate_minimum).lower()}")
    print(f"status {result.status}")

    report = _new_report("minimize", args)
    report.q_values = [q.q]
    report.results = [
        {
            "quantity": "minimum",
            "minimizer": result.minimizer.as_dict(),
            "value": result.minimum_value,
            "entropy": h,
            "gap": gap,
            **result.diagnostics(),
        }
    ]
    _finish_report(report, args)
    if not result.converged:
        raise ConvergenceError(
            f"no convergence after {result.iterations_used} iterations ({result.status})"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="truth-belief",
        description="Complexity, entropy and divergence of q-deformed truth/belief pairs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="log to stderr (-v info, -vv debug)"
    )

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every random draw")
    common.add_argument("--report", type=Path, default=None, help="write a JSON run report")

    files = argparse.ArgumentParser(add_help=False)
    files.add_argument("--x", type=Path, required=True, help="truth distribution (JSON or CSV)")
    files.add_argument(
        "--normalize", action="store_true", help="rescale weights that do not sum to 1"
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common, files], help="evaluate one quantity")
    p.add_argument("--y", type=Path, default=None, help="belief distribution")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--quantity", choices=sorted(QUANTITIES), required=True)
    p.set_defaults(handler=cmd_compute)

    p = sub.add_parser("sweep", parents=[common, files], help="CSV of all quantities over a q grid")
    p.add_argument("--y", type=Path, default=None, help="belief distribution")
    p.add_argument("--q-min", type=float, required=True)
    p.add_argument("--q-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("verify", parents=[common], help="run the verification suites")
    p.add_argument("--suite", choices=SUITE_NAMES, default="all")
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("minimize", parents=[common, files], help="minimise the complexity over beliefs")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--tolerance", type=float, default=SolverConfig.value_tolerance)
    p.add_argument("--step-tolerance", type=float, default=SolverConfig.step_tolerance)
    p.add_argument("--max-iterations", type=int, default=SolverConfig.max_iterations)
    p.set_defaults(handler=cmd_minimize)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )
    logging.getLogger("truth_belief").setLevel(level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage and 0 after --help/--version
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK
    _configure_logging(args.verbose)

    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"{parser.prog}: malformed input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"{parser.prog}: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
