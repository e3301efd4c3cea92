"""Experiment harness: seeded benchmark runs, CSV ingestion, result emission.

Three canned experiments drive the synthetic generators through the
composite tests over a grid of dependence coefficients:

* ``power_weak_pairwise``: rejection rates of the Lancaster and 3-way HSIC
  tests on the pairwise-independent / jointly-dependent process.
* ``power_strong_pairwise``: same comparison on the linearly coupled
  process.
* ``fpr_study``: false positive rates of the wild and permutation bootstrap
  variants of the Lancaster test on mutually independent AR chains.

Every replicate derives its data stream and test seeds from
``(seed, grid index, replicate index)``, so output is byte-identical across
runs and across worker counts.  Result rows carry wall-clock seconds only
when timing is switched on; the default emits 0.0 to keep output files
reproducible.
"""

from __future__ import annotations

import csv
import json
import multiprocessing
import time
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .bootstrap import derive_rng
from .exceptions import InputError
from .kernels import KernelSpec, median_heuristic_bandwidth
from .statistics import LANCASTER, THREEWAY_HSIC, TripleSeries
from .synthdata import (
    INDEPENDENT,
    STRONG_PAIRWISE,
    WEAK_PAIRWISE,
    ArTripleSpec,
    gen_independent_ar,
    gen_strong_pairwise,
    gen_weak_pairwise,
)
from .testing import (
    HOLM_BONFERRONI,
    PERMUTATION,
    SIMPLE,
    WILD,
    TestConfig,
    correction_holm_bonferroni,
    correction_simple,
    lancaster_test,
    pairwise_hsic_test,
    threeway_hsic_test,
)

__all__ = [
    "EXPERIMENTS",
    "ExperimentSpec",
    "ResultRow",
    "ReplicateRecord",
    "run_power_curve",
    "run_fpr_study",
    "run_single_test",
    "ingest_returns_csv",
    "write_triple_csv",
    "emit_results",
    "emit_plot",
    "read_results_csv",
    "read_results_json",
]

POWER_WEAK = "power_weak_pairwise"
POWER_STRONG = "power_strong_pairwise"
FPR_STUDY = "fpr_study"
SINGLE_TEST = "single_test"
EXPERIMENTS = (POWER_WEAK, POWER_STRONG, FPR_STUDY, SINGLE_TEST)

RESULT_HEADER = (
    "experiment",
    "coefficient",
    "method",
    "correction",
    "rejection_rate",
    "replications",
    "mean_statistic",
    "seconds",
)


@dataclass(frozen=True)
class ExperimentSpec:
    """One experiment run: which study, at what scale, from which seed."""

    experiment: str
    grid: tuple[float, ...]
    n: int = 1200
    replications: int = 300
    n_bootstrap: int = 250
    dependence_length: float = 20.0
    alpha: float = 0.05
    sigma_x: float = 1.0
    sigma_y: float = 1.0
    sigma_z: float = 1.0
    median_heuristic: bool = False
    method: str = WILD
    correction: str = SIMPLE
    seed: int = 0
    burn_in: int = 0
    workers: int = 1
    timing: bool = False

    def __post_init__(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise InputError(f"unknown experiment {self.experiment!r}")
        object.__setattr__(self, "grid", tuple(float(g) for g in self.grid))
        if self.experiment != SINGLE_TEST and not self.grid:
            raise InputError("coefficient grid must be nonempty")
        if self.replications < 1:
            raise InputError(f"need at least one replication, got {self.replications}")
        if self.experiment == FPR_STUDY and any(abs(a) >= 1 for a in self.grid):
            raise InputError(
                f"fpr_study grid values must satisfy |a| < 1 for stationarity, got {self.grid}"
            )
        if self.workers < 1:
            raise InputError(f"worker count must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class ResultRow:
    experiment: str
    coefficient: float
    method: str
    correction: str
    rejection_rate: float
    replications: int
    mean_statistic: float
    seconds: float


@dataclass(frozen=True)
class ReplicateRecord:
    """Per-dataset outcome kept for diagnostics (e.g. correction dominance)."""

    experiment: str
    coefficient: float
    method: str
    replicate: int
    p_values: tuple[float, float, float]
    statistics: tuple[float, float, float]
    reject_simple: bool
    reject_holm_bonferroni: bool


def _child_seed(seed: int, *path: int) -> int:
    return int(
        np.random.SeedSequence(seed, spawn_key=tuple(path)).generate_state(
            1, dtype=np.uint64
        )[0]
    )


def _kernels_for(spec: ExperimentSpec, triple: TripleSeries):
    if spec.median_heuristic:
        return (
            KernelSpec(median_heuristic_bandwidth(triple.x)),
            KernelSpec(median_heuristic_bandwidth(triple.y)),
            KernelSpec(median_heuristic_bandwidth(triple.z)),
        )
    return KernelSpec(spec.sigma_x), KernelSpec(spec.sigma_y), KernelSpec(spec.sigma_z)


def _base_config(spec: ExperimentSpec, triple: TripleSeries, method: str, seed: int) -> TestConfig:
    kx, ky, kz = _kernels_for(spec, triple)
    return TestConfig(
        kernel_x=kx,
        kernel_y=ky,
        kernel_z=kz,
        n_bootstrap=spec.n_bootstrap,
        dependence_length=spec.dependence_length,
        alpha=spec.alpha,
        correction=SIMPLE,
        method=method,
        seed=seed,
    )


_GENERATORS = {
    POWER_WEAK: (WEAK_PAIRWISE, gen_weak_pairwise),
    POWER_STRONG: (STRONG_PAIRWISE, gen_strong_pairwise),
    FPR_STUDY: (INDEPENDENT, gen_independent_ar),
}


def _make_dataset(spec: ExperimentSpec, coeff: float, gi: int, rep: int) -> TripleSeries:
    kind, generator = _GENERATORS[spec.experiment]
    triple_spec = ArTripleSpec(kind=kind, n=spec.n, coeff=coeff, burn_in=spec.burn_in)
    return generator(triple_spec, derive_rng(spec.seed, gi, rep, 0))


def _power_task(args) -> tuple:
    spec, gi, rep = args
    coeff = spec.grid[gi]
    triple = _make_dataset(spec, coeff, gi, rep)
    out = []
    for variant, runner in ((1, lancaster_test), (2, threeway_hsic_test)):
        cfg = _base_config(spec, triple, spec.method, _child_seed(spec.seed, gi, rep, variant))
        result = runner(triple, cfg)
        out.append((result.p_values, result.statistics))
    return tuple(out)


def _fpr_task(args) -> tuple:
    spec, gi, rep = args
    coeff = spec.grid[gi]
    triple = _make_dataset(spec, coeff, gi, rep)
    out = []
    for variant, method in ((1, WILD), (2, PERMUTATION)):
        cfg = _base_config(spec, triple, method, _child_seed(spec.seed, gi, rep, variant))
        result = lancaster_test(triple, cfg)
        out.append((result.p_values, result.statistics))
    return tuple(out)


def _run_tasks(task_fn, args_list, workers: int) -> list:
    if workers <= 1 or len(args_list) <= 1:
        return [task_fn(a) for a in args_list]
    ctx = multiprocessing.get_context("spawn")
    chunk = max(1, len(args_list) // (workers * 4))
    with ctx.Pool(processes=workers) as pool:
        return pool.map(task_fn, args_list, chunksize=chunk)


def _method_rows_and_records(
    spec: ExperimentSpec,
    coeff: float,
    method_name: str,
    outcomes: list[tuple],
    seconds: float,
):
    """Aggregate per-replicate (p_values, statistics) into rows + records."""
    records = []
    for rep, (p_values, statistics) in enumerate(outcomes):
        records.append(
            ReplicateRecord(
                experiment=spec.experiment,
                coefficient=coeff,
                method=method_name,
                replicate=rep,
                p_values=p_values,
                statistics=statistics,
                reject_simple=correction_simple(p_values, spec.alpha),
                reject_holm_bonferroni=correction_holm_bonferroni(p_values, spec.alpha),
            )
        )
    reps = len(records)
    mean_stat = float(np.mean([np.mean(r.statistics) for r in records]))
    rows = []
    for correction, flag in (
        (SIMPLE, "reject_simple"),
        (HOLM_BONFERRONI, "reject_holm_bonferroni"),
    ):
        rejections = sum(getattr(r, flag) for r in records)
        rows.append(
            ResultRow(
                experiment=spec.experiment,
                coefficient=coeff,
                method=method_name,
                correction=correction,
                rejection_rate=rejections / reps,
                replications=reps,
                mean_statistic=mean_stat,
                seconds=seconds,
            )
        )
    return rows, records


def _run_grid(spec: ExperimentSpec, task_fn, method_names, record_sink):
    rows = []
    for gi, coeff in enumerate(spec.grid):
        args = [(spec, gi, rep) for rep in range(spec.replications)]
        start = time.perf_counter()
        outcomes = _run_tasks(task_fn, args, spec.workers)
        seconds = time.perf_counter() - start if spec.timing else 0.0
        for mi, method_name in enumerate(method_names):
            per_method = [o[mi] for o in outcomes]
            method_rows, records = _method_rows_and_records(
                spec, coeff, method_name, per_method, seconds
            )
            rows.extend(method_rows)
            if record_sink is not None:
                record_sink.extend(records)
    return rows


def run_power_curve(spec: ExperimentSpec, record_sink: list | None = None) -> list[ResultRow]:
    """Rejection rates of both composite tests over a coefficient grid.

    Emits one row per (coefficient, statistic kind, correction); both
    corrections are evaluated on the same per-dataset p-values.
    """
    if spec.experiment not in (POWER_WEAK, POWER_STRONG):
        raise InputError(f"not a power experiment: {spec.experiment!r}")
    return _run_grid(spec, _power_task, (LANCASTER, THREEWAY_HSIC), record_sink)


def run_fpr_study(spec: ExperimentSpec, record_sink: list | None = None) -> list[ResultRow]:
    """False positive rates of the wild vs permutation Lancaster test.

    The composite null is true for every dataset, so every rejection is a
    false positive.
    """
    if spec.experiment != FPR_STUDY:
        raise InputError(f"not an fpr experiment: {spec.experiment!r}")
    return _run_grid(spec, _fpr_task, (WILD, PERMUTATION), record_sink)


def run_single_test(triple: TripleSeries, spec: ExperimentSpec):
    """Run Lancaster, 3-way HSIC, and all pairwise HSIC tests on one triple.

    Returns ``(rows, details)`` where rows fit the common result schema
    (rejection_rate is the 0/1 decision, replications is 1) and details maps
    each test to its p-values for reporting.
    """
    start = time.perf_counter()
    corr_fn = {SIMPLE: correction_simple, HOLM_BONFERRONI: correction_holm_bonferroni}[
        spec.correction
    ]
    rows: list[ResultRow] = []
    details: dict[str, tuple[float, ...]] = {}

    for variant, (name, runner) in enumerate(
        ((LANCASTER, lancaster_test), (THREEWAY_HSIC, threeway_hsic_test)), start=1
    ):
        cfg = _base_config(spec, triple, spec.method, _child_seed(spec.seed, 0, 0, variant))
        cfg = replace(cfg, correction=spec.correction)
        result = runner(triple, cfg)
        details[name] = result.p_values
        rows.append(
            ResultRow(
                experiment=SINGLE_TEST,
                coefficient=0.0,
                method=name,
                correction=spec.correction,
                rejection_rate=float(corr_fn(result.p_values, spec.alpha)),
                replications=1,
                mean_statistic=float(np.mean(result.statistics)),
                seconds=0.0,
            )
        )

    pairs = (
        ("pairwise_hsic_xy", triple.x, triple.y),
        ("pairwise_hsic_xz", triple.x, triple.z),
        ("pairwise_hsic_yz", triple.y, triple.z),
    )
    for variant, (name, a, b) in enumerate(pairs, start=3):
        cfg = _base_config(spec, triple, spec.method, _child_seed(spec.seed, 0, 0, variant))
        sub = pairwise_hsic_test(a, b, cfg)
        details[name] = (sub.p,)
        rows.append(
            ResultRow(
                experiment=SINGLE_TEST,
                coefficient=0.0,
                method=name,
                correction="none",
                rejection_rate=float(sub.p <= spec.alpha),
                replications=1,
                mean_statistic=sub.statistic,
                seconds=0.0,
            )
        )

    if spec.timing:
        elapsed = time.perf_counter() - start
        rows = [
            ResultRow(**{**_row_dict(r), "seconds": elapsed}) for r in rows
        ]
    return rows, details


def _row_dict(row: ResultRow) -> dict:
    return {f.name: getattr(row, f.name) for f in fields(ResultRow)}


# ---------------------------------------------------------------------------
# CSV ingestion (returns preprocessing) and emission
# ---------------------------------------------------------------------------


def ingest_returns_csv(
    path,
    columns,
    row_range: tuple[int, int] | None = None,
    shifts: dict[str, int] | None = None,
) -> TripleSeries:
    """Load three numeric columns and preprocess them into returns.

    Each selected column is first-differenced (``x[t] - x[t-1]``) over the
    whole column and divided by the sample standard deviation (n-1
    denominator) of the differenced column, so the output is one entry
    shorter than the input.  ``row_range=(start, stop)`` then selects a
    window of the processed series, and ``shifts`` offsets the window
    per column; shifting one column reproduces the broken-alignment
    experiment where two series keep their window and the third is taken
    from a later stretch.
    """
    columns = list(columns)
    if len(columns) != 3:
        raise InputError(f"exactly three column names are required, got {len(columns)}")
    shifts = dict(shifts or {})
    for name in shifts:
        if name not in columns:
            raise InputError(f"shift column {name!r} is not among {columns}")

    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InputError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        missing = [c for c in columns if c not in header]
        if missing:
            raise InputError(f"{path}: missing columns {missing}; header has {header}")
        col_idx = {c: header.index(c) for c in columns}
        raw: dict[str, list[float]] = {c: [] for c in columns}
        for row_number, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            for c in columns:
                cell = row[col_idx[c]] if col_idx[c] < len(row) else ""
                try:
                    raw[c].append(float(cell))
                except ValueError:
                    raise InputError(
                        f"{path}: non-numeric value {cell!r} in column {c!r} "
                        f"on line {row_number}"
                    ) from None

    n_rows = len(raw[columns[0]])
    if n_rows < 3:
        raise InputError(f"{path}: need at least 3 data rows, got {n_rows}")

    processed = {}
    for c in columns:
        diffs = np.diff(np.asarray(raw[c], dtype=np.float64))
        std = float(np.std(diffs, ddof=1))
        if std == 0.0:
            raise InputError(
                f"{path}: column {c!r} has zero standard deviation after differencing; "
                "cannot normalise"
            )
        processed[c] = diffs / std

    length = n_rows - 1
    start, stop = row_range if row_range is not None else (0, length)
    if not 0 <= start < stop:
        raise InputError(f"invalid row range ({start}, {stop})")
    windows = []
    for c in columns:
        offset = int(shifts.get(c, 0))
        lo, hi = start + offset, stop + offset
        if lo < 0 or hi > length:
            raise InputError(
                f"window [{lo}, {hi}) for column {c!r} falls outside the "
                f"{length} processed entries"
            )
        windows.append(processed[c][lo:hi])
    return TripleSeries(windows[0], windows[1], windows[2])


def write_triple_csv(triple: TripleSeries, path, columns=("x", "y", "z")) -> None:
    """Write a scalar triple as a three-column CSV (exact float round trip)."""
    columns = list(columns)
    if len(columns) != 3:
        raise InputError(f"exactly three column names are required, got {len(columns)}")
    if triple.x.shape[1] != 1 or triple.y.shape[1] != 1 or triple.z.shape[1] != 1:
        raise InputError("only scalar-valued triples can be written to CSV")
    lines = [",".join(columns)]
    for xv, yv, zv in zip(triple.x[:, 0], triple.y[:, 0], triple.z[:, 0]):
        lines.append(f"{float(xv)!r},{float(yv)!r},{float(zv)!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _format_field(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_results(rows: list[ResultRow], fmt: str = "csv", path=None) -> str:
    """Serialise result rows as CSV or JSON; optionally write to ``path``.

    Floats are rendered with ``repr`` so a CSV -> JSON -> CSV round trip is
    lossless.
    """
    if not rows:
        raise InputError("no result rows to emit")
    if fmt == "csv":
        lines = [",".join(RESULT_HEADER)]
        for row in rows:
            lines.append(",".join(_format_field(getattr(row, f)) for f in RESULT_HEADER))
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        payload = [{f: getattr(row, f) for f in RESULT_HEADER} for row in rows]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        raise InputError(f"unknown output format {fmt!r}")
    if path is not None:
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot write results to {path}: {exc}") from exc
    return text


def _typed_row(values: dict) -> ResultRow:
    return ResultRow(
        experiment=str(values["experiment"]),
        coefficient=float(values["coefficient"]),
        method=str(values["method"]),
        correction=str(values["correction"]),
        rejection_rate=float(values["rejection_rate"]),
        replications=int(values["replications"]),
        mean_statistic=float(values["mean_statistic"]),
        seconds=float(values["seconds"]),
    )


def read_results_csv(path) -> list[ResultRow]:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        return [_typed_row(row) for row in reader]


def read_results_json(path) -> list[ResultRow]:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    return [_typed_row(row) for row in payload]


# ---------------------------------------------------------------------------
# Minimal SVG line chart
# ---------------------------------------------------------------------------

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def emit_plot(rows: list[ResultRow], path) -> None:
    """Render rejection rate against coefficient as a small SVG line chart.

    One polyline per (method, correction) series, with axis labels and a
    text legend.  The output is plain well-formed XML.
    """
    if not rows:
        raise InputError("no result rows to plot")
    width, height = 640, 440
    left, right, top, bottom = 70, 20, 20, 60
    plot_w, plot_h = width - left - right, height - top - bottom

    xs = [r.coefficient for r in rows]
    x_lo, x_hi = min(xs), max(xs)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5

    def sx(x: float) -> float:
        return left + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y: float) -> float:
        return top + (1.0 - y) * plot_h

    series: dict[tuple[str, str], list[ResultRow]] = {}
    for row in rows:
        series.setdefault((row.method, row.correction), []).append(row)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{top + plot_h}" x2="{left + plot_w}" y2="{top + plot_h}" '
        'stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + plot_h}" stroke="black"/>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = sy(frac)
        parts.append(
            f'<text x="{left - 8}" y="{y + 4}" text-anchor="end" font-size="12">{frac:g}</text>'
        )
        parts.append(
            f'<line x1="{left - 4}" y1="{y}" x2="{left}" y2="{y}" stroke="black"/>'
        )
    for x in sorted(set(xs)):
        parts.append(
            f'<text x="{sx(x):.1f}" y="{top + plot_h + 18}" text-anchor="middle" '
            f'font-size="12">{x:g}</text>'
        )
        parts.append(
            f'<line x1="{sx(x):.1f}" y1="{top + plot_h}" x2="{sx(x):.1f}" '
            f'y2="{top + plot_h + 4}" stroke="black"/>'
        )
    parts.append(
        f'<text x="{left + plot_w / 2:.1f}" y="{height - 20}" text-anchor="middle" '
        'font-size="14">coefficient</text>'
    )
    parts.append(
        f'<text x="18" y="{top + plot_h / 2:.1f}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 18 {top + plot_h / 2:.1f})">rejection rate</text>'
    )

    for i, ((method, correction), group) in enumerate(sorted(series.items())):
        color = _PALETTE[i % len(_PALETTE)]
        pts = sorted((r.coefficient, r.rejection_rate) for r in group)
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
        for x, y in pts:
            parts.append(
                f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3" fill="{color}"/>'
            )
        parts.append(
            f'<text x="{left + 10}" y="{top + 16 + 16 * i}" font-size="12" '
            f'fill="{color}">{method} / {correction}</text>'
        )
    parts.append("</svg>")
    try:
        Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write plot to {path}: {exc}") from exc
