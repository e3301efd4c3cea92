"""Command-line entry point for the experiment harness.

Examples
--------
Reproduce the false-positive-rate study at desk scale and plot it::

    lancaster --experiment fpr_study --desk --seed 7 \
        --out fpr.csv --plot fpr.svg

Run the composite tests on three columns of a CSV of price levels
(differenced and normalised on ingestion), with the third series taken
from a window 800 entries later::

    lancaster --experiment single_test --input rates.csv \
        --columns gbp,usd,eur --rows 0:800 --shift eur:800 --out result.json \
        --format json

Exit codes: 0 on success, 2 for invalid inputs, 3 for runtime errors.
"""

from __future__ import annotations

import argparse
import sys

from .exceptions import InputError
from .experiments import (
    EXPERIMENTS,
    FPR_STUDY,
    POWER_STRONG,
    POWER_WEAK,
    SINGLE_TEST,
    ExperimentSpec,
    emit_plot,
    emit_results,
    ingest_returns_csv,
    run_fpr_study,
    run_power_curve,
    run_single_test,
)
from .testing import HOLM_BONFERRONI, PERMUTATION, SIMPLE, WILD

__all__ = ["main", "build_parser"]

DEFAULT_GRIDS = {
    POWER_WEAK: (0.5, 1.0, 1.5, 2.0),
    POWER_STRONG: (0.1, 0.2, 0.3),
    FPR_STUDY: (0.1, 0.3, 0.5),
    SINGLE_TEST: (),
}

# Paper-scale defaults and the smaller desk preset for minutes-scale runs.
FULL_SCALE = {"n": 1200, "reps": 300, "bootstraps": 250}
DESK_SCALE = {"n": 600, "reps": 100, "bootstraps": 200}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lancaster",
        description=(
            "Nonparametric tests for three-variable interaction in stationary "
            "time series: Lancaster interaction and 3-way HSIC statistics with "
            "wild-bootstrap calibration, plus synthetic power/false-positive "
            "benchmarks."
        ),
        epilog=__doc__.split("Examples")[0],
    )
    parser.add_argument(
        "--experiment", required=True, choices=EXPERIMENTS, help="which study to run"
    )
    parser.add_argument(
        "--grid",
        type=str,
        default=None,
        help="comma-separated dependence coefficients (default depends on the experiment)",
    )
    parser.add_argument("--n", type=int, default=None, help="observations per dataset")
    parser.add_argument(
        "--reps", type=int, default=None, help="datasets per grid point"
    )
    parser.add_argument(
        "--bootstraps", type=int, default=None, help="bootstrap draws per sub-test"
    )
    parser.add_argument(
        "--ln",
        type=float,
        default=20.0,
        help="dependence length of the wild multiplier process (default 20)",
    )
    parser.add_argument("--alpha", type=float, default=0.05, help="significance level")
    parser.add_argument(
        "--correction",
        choices=("simple", "hb"),
        default="simple",
        help="multiple-testing correction for single-test decisions",
    )
    parser.add_argument(
        "--method",
        choices=("wild", "perm"),
        default="wild",
        help="bootstrap method for power/single-test runs (fpr_study always runs both)",
    )
    parser.add_argument("--sigma-x", type=float, default=1.0, help="kernel bandwidth for X")
    parser.add_argument("--sigma-y", type=float, default=1.0, help="kernel bandwidth for Y")
    parser.add_argument("--sigma-z", type=float, default=1.0, help="kernel bandwidth for Z")
    parser.add_argument(
        "--median-heuristic",
        action="store_true",
        help="set each bandwidth to the median pairwise distance of its series",
    )
    parser.add_argument("--seed", type=int, default=0, help="master seed")
    parser.add_argument("--out", type=str, default=None, help="output file path")
    parser.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format"
    )
    parser.add_argument(
        "--desk",
        action="store_true",
        help=f"desk-scale preset {DESK_SCALE} instead of {FULL_SCALE}",
    )
    parser.add_argument(
        "--shift",
        action="append",
        default=[],
        metavar="COLUMN:OFFSET",
        help="offset one ingested column's window (repeatable)",
    )
    parser.add_argument(
        "--input", type=str, default=None, help="input CSV for single_test"
    )
    parser.add_argument(
        "--columns",
        type=str,
        default=None,
        help="comma-separated names of the three columns to ingest",
    )
    parser.add_argument(
        "--rows",
        type=str,
        default=None,
        metavar="START:STOP",
        help="window of the processed (differenced) series to use",
    )
    parser.add_argument("--plot", type=str, default=None, help="also write an SVG chart here")
    parser.add_argument("--workers", type=int, default=1, help="worker processes")
    parser.add_argument(
        "--burn-in", type=int, default=0, help="generator burn-in samples (default 0)"
    )
    parser.add_argument(
        "--timing",
        action="store_true",
        help="record wall-clock seconds in result rows (off by default so that "
        "output files are byte-reproducible)",
    )
    return parser


def _parse_grid(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise InputError(f"cannot parse grid {text!r} as comma-separated reals") from None


def _parse_shifts(pairs: list[str]) -> dict[str, int]:
    shifts: dict[str, int] = {}
    for pair in pairs:
        column, sep, offset = pair.rpartition(":")
        if not sep or not column:
            raise InputError(f"--shift expects COLUMN:OFFSET, got {pair!r}")
        try:
            shifts[column] = int(offset)
        except ValueError:
            raise InputError(f"shift offset must be an integer, got {offset!r}") from None
    return shifts


def _parse_rows(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    start, sep, stop = text.partition(":")
    if not sep:
        raise InputError(f"--rows expects START:STOP, got {text!r}")
    try:
        return int(start), int(stop)
    except ValueError:
        raise InputError(f"cannot parse row range {text!r}") from None


def _spec_from_args(args) -> ExperimentSpec:
    scale = DESK_SCALE if args.desk else FULL_SCALE
    grid = _parse_grid(args.grid) if args.grid is not None else DEFAULT_GRIDS[args.experiment]
    return ExperimentSpec(
        experiment=args.experiment,
        grid=grid,
        n=args.n if args.n is not None else scale["n"],
        replications=args.reps if args.reps is not None else scale["reps"],
        n_bootstrap=args.bootstraps if args.bootstraps is not None else scale["bootstraps"],
        dependence_length=args.ln,
        alpha=args.alpha,
        sigma_x=args.sigma_x,
        sigma_y=args.sigma_y,
        sigma_z=args.sigma_z,
        median_heuristic=args.median_heuristic,
        method={"wild": WILD, "perm": PERMUTATION}[args.method],
        correction={"simple": SIMPLE, "hb": HOLM_BONFERRONI}[args.correction],
        seed=args.seed,
        burn_in=args.burn_in,
        workers=args.workers,
        timing=args.timing,
    )


def _run(args) -> int:
    spec = _spec_from_args(args)

    if args.experiment == SINGLE_TEST:
        if args.input is None or args.columns is None:
            raise InputError("single_test requires --input and --columns")
        columns = [c.strip() for c in args.columns.split(",") if c.strip()]
        triple = ingest_returns_csv(
            args.input,
            columns,
            row_range=_parse_rows(args.rows),
            shifts=_parse_shifts(args.shift),
        )
        rows, details = run_single_test(triple, spec)
        for name, p_values in details.items():
            rendered = ", ".join(f"{p:.6g}" for p in p_values)
            print(f"{name}: p = {rendered}")
    elif args.experiment == FPR_STUDY:
        rows = run_fpr_study(spec)
    else:
        rows = run_power_curve(spec)

    text = emit_results(rows, fmt=args.format, path=args.out)
    if args.out is None:
        print(text, end="")
    else:
        print(f"wrote {len(rows)} result rows to {args.out}", file=sys.stderr)
    if args.plot is not None:
        emit_plot(rows, args.plot)
        print(f"wrote plot to {args.plot}", file=sys.stderr)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # numerical or internal failure
        print(f"runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
