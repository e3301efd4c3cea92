"""Acceptance suite.

One test per criterion, each printing a single PASS/FAIL line (run with
``pytest tests/test_acceptance.py -v -s`` to see them live).  The heavy
Monte-Carlo studies are shared through session-scoped fixtures; everything
is seeded, so reruns are exact.
"""

import time

import numpy as np
import pytest

import lancaster as lc
from lancaster.cli import main as cli_main
from lancaster.kernels import _center_symmetric
from lancaster.statistics import core_parts_from_grams

SEED = 1
K1 = lc.KernelSpec(1.0)


def report(num: int, ok: bool, detail: str) -> str:
    line = f"ACCEPTANCE {num:02d}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    return line


def random_triple(n, seed):
    rng = lc.derive_rng(seed, 1234)
    return lc.TripleSeries(
        rng.standard_normal((n, 1)),
        rng.standard_normal((n, 1)),
        rng.standard_normal((n, 1)),
    )


def random_probs(shape, rng):
    p = rng.random(shape)
    return p / p.sum()


def product_joint(target, shape, rng):
    sx, sy, sz = shape
    if target == "Z":
        pair, single = random_probs((sx, sy), rng), random_probs(sz, rng)
        probs = pair[:, :, None] * single[None, None, :]
    elif target == "X":
        pair, single = random_probs((sy, sz), rng), random_probs(sx, rng)
        probs = single[:, None, None] * pair[None, :, :]
    else:
        pair, single = random_probs((sx, sz), rng), random_probs(sy, rng)
        probs = pair[:, None, :] * single[None, :, None]
    supports = [np.sort(rng.standard_normal(s)) for s in shape]
    return lc.DiscreteJoint(probs, *supports)


def xor_joint():
    probs = np.zeros((2, 2, 2))
    for i in range(2):
        for j in range(2):
            probs[i, j, i ^ j] = 0.25
    return lc.DiscreteJoint(probs, [0.0, 1.0], [0.0, 1.0], [0.0, 1.0])


def two_state_chain(stay: float):
    def gen(n, rng):
        first = rng.integers(2)
        flips = rng.random(n - 1) >= stay
        states = np.empty(n, dtype=np.int64)
        states[0] = first
        states[1:] = first ^ (np.cumsum(flips) & 1)
        return np.where(states == 1, 1.0, -1.0)

    return gen


# ---------------------------------------------------------------------------
# shared Monte-Carlo fixtures
# ---------------------------------------------------------------------------


@pytest.fixture(scope="session")
def fpr_run():
    spec = lc.ExperimentSpec(
        experiment="fpr_study",
        grid=(0.1, 0.3, 0.5),
        n=500,
        replications=200,
        n_bootstrap=200,
        alpha=0.05,
        seed=SEED,
    )
    records = []
    rows = lc.run_fpr_study(spec, record_sink=records)
    return rows, records


@pytest.fixture(scope="session")
def weak_power_run():
    spec = lc.ExperimentSpec(
        experiment="power_weak_pairwise",
        grid=(0.5, 1.0, 1.5, 2.0),
        n=600,
        replications=100,
        n_bootstrap=200,
        alpha=0.05,
        seed=SEED,
    )
    records = []
    rows = lc.run_power_curve(spec, record_sink=records)
    return rows, records


@pytest.fixture(scope="session")
def strong_power_run():
    spec = lc.ExperimentSpec(
        experiment="power_strong_pairwise",
        grid=(0.1, 0.2, 0.3),
        n=600,
        replications=100,
        n_bootstrap=200,
        alpha=0.05,
        seed=SEED,
    )
    records = []
    rows = lc.run_power_curve(spec, record_sink=records)
    return rows, records


def simple_rates(rows, method):
    return {
        r.coefficient: r.rejection_rate
        for r in rows
        if r.method == method and r.correction == "simple"
    }


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def test_acceptance_01_statistic_form_equivalence():
    """Entry sums of (Kc o Lc o Mc) and (center(Kc o Lc) o Mc) coincide."""
    start = time.perf_counter()
    worst = 0.0
    sizes = [5] * 34 + [20] * 33 + [50] * 33
    for i, n in enumerate(sizes):
        t = random_triple(n, seed=i)
        gx = lc.gram(K1, t.x).values
        gy = lc.gram(K1, t.y).values
        gz = lc.gram(K1, t.z).values
        direct = (
            _center_symmetric(gx) * _center_symmetric(gy) * _center_symmetric(gz)
        ).sum()
        pair, target = core_parts_from_grams(gx, gy, gz, "Z", "lancaster")
        recentred = (pair * target).sum()
        worst = max(worst, abs(direct - recentred) / max(abs(direct), 1e-12))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 10.0
    line = report(
        1, ok, f"form equivalence worst rel diff {worst:.2e} over 100 triples "
        f"({elapsed:.1f}s)"
    )
    assert ok, line


def test_acceptance_02_hsic_expansion_identity():
    start = time.perf_counter()
    worst = 0.0
    for i in range(100):
        n = (5, 20, 50)[i % 3]
        t = random_triple(n, seed=1000 + i)
        k = lc.gram(K1, t.x).values
        l = lc.gram(K1, t.y).values
        expanded = (
            (k * l).sum() / n
            - 2.0 / n**2 * (k @ l).sum()
            + k.sum() * l.sum() / n**3
        )
        value = lc.hsic_statistic(t.x, t.y)
        worst = max(worst, abs(value - expanded) / max(abs(value), 1e-12))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 10.0
    line = report(
        2, ok, f"hsic expansion worst rel diff {worst:.2e} over 100 pairs "
        f"({elapsed:.1f}s)"
    )
    assert ok, line


def test_acceptance_03_interaction_measure_vanishes():
    start = time.perf_counter()
    rng = np.random.default_rng(3)
    worst = 0.0
    for target in ("X", "Y", "Z"):
        for _ in range(30):
            shape = tuple(rng.integers(2, 4, size=3))
            joint = product_joint(target, shape, rng)
            worst = max(worst, float(np.abs(lc.lancaster_measure(joint)).max()))
    xor_table = lc.lancaster_measure(xor_joint())
    xor_exact = float(np.abs(xor_table).max()) == 0.125 and np.all(
        np.abs(xor_table) == 0.125
    )
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-14 and xor_exact and elapsed < 5.0
    line = report(
        3, ok, f"measure residual {worst:.2e} on 90 factorising joints; "
        f"xor cells exactly 1/8: {xor_exact} ({elapsed:.1f}s)"
    )
    assert ok, line


def test_acceptance_04_core_degeneracy():
    start = time.perf_counter()
    rng = np.random.default_rng(4)
    worst = 0.0
    for target in ("X", "Y", "Z"):
        for _ in range(20):
            shape = tuple(rng.integers(2, 4, size=3))
            joint = product_joint(target, shape, rng)
            for _ in range(20):
                point = tuple(rng.standard_normal(3))
                value = lc.core_h_expectation(joint, K1, K1, K1, point, target)
                worst = max(worst, abs(value))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and elapsed < 30.0
    line = report(
        4, ok, f"degeneracy residual {worst:.2e} over 20 joints x 20 points "
        f"x 3 rotations ({elapsed:.1f}s)"
    )
    assert ok, line


def test_acceptance_05_wild_type_one_calibration(fpr_run):
    rows, _ = fpr_run
    wild = simple_rates(rows, "wild")
    ok = all(rate <= 0.10 for rate in wild.values())
    detail = ", ".join(f"a={a}: {r:.3f}" for a, r in sorted(wild.items()))
    line = report(5, ok, f"wild false positive rates {detail} (bound 0.10)")
    assert ok, line


def test_acceptance_06_permutation_failure_direction(fpr_run):
    rows, _ = fpr_run
    wild = simple_rates(rows, "wild")
    perm = simple_rates(rows, "permutation")
    exceeds_wild = perm[0.5] > wild[0.5]
    exceeds_bound = perm[0.5] > 0.10
    ok = exceeds_wild and exceeds_bound
    line = report(
        6,
        ok,
        f"permutation rate at a=0.5 is {perm[0.5]:.3f} vs wild {wild[0.5]:.3f} "
        f"(exceeds wild: {exceeds_wild}; exceeds 0.10: {exceeds_bound})",
    )
    assert ok, line


def test_acceptance_07_weak_pairwise_power_ordering(weak_power_run):
    rows, _ = weak_power_run
    lan = simple_rates(rows, "lancaster")
    hsic = simple_rates(rows, "threeway_hsic")
    gaps = {d: lan[d] - hsic[d] for d in lan}
    best = max(gaps, key=gaps.get)
    ok = gaps[best] >= 0.2
    line = report(
        7,
        ok,
        f"lancaster minus 3-way power gap peaks at d={best}: {gaps[best]:+.2f} "
        f"(need >= +0.20); lancaster={lan}, threeway={hsic}",
    )
    assert ok, line


def test_acceptance_08_strong_pairwise_power_ordering(strong_power_run):
    rows, _ = strong_power_run
    lan = simple_rates(rows, "lancaster")
    hsic = simple_rates(rows, "threeway_hsic")
    gaps = {d: hsic[d] - lan[d] for d in lan}
    best = max(gaps, key=gaps.get)
    ok = gaps[best] >= 0.2
    line = report(
        8,
        ok,
        f"3-way minus lancaster power gap peaks at d={best}: {gaps[best]:+.2f} "
        f"(need >= +0.20); threeway={hsic}, lancaster={lan}",
    )
    assert ok, line


def test_acceptance_09_correction_dominance(fpr_run, weak_power_run, strong_power_run):
    violations = 0
    total = 0
    for _, records in (fpr_run, weak_power_run, strong_power_run):
        for record in records:
            total += 1
            if record.reject_holm_bonferroni and not record.reject_simple:
                violations += 1
    ok = violations == 0 and total > 0
    line = report(
        9, ok, f"holm-bonferroni implies simple on {total} datasets, "
        f"{violations} violations"
    )
    assert ok, line


def test_acceptance_10_embedding_rate():
    start = time.perf_counter()
    marginal = lc.DiscreteMarginal([-1.0, 1.0], [0.5, 0.5])
    slopes = {}
    for name, stay in (("iid", 0.5), ("lazy_markov", 0.9)):
        slopes[name] = lc.embedding_convergence_slope(
            two_state_chain(stay),
            K1,
            marginal,
            [100, 400, 1600, 6400],
            50,
            lc.derive_rng(SEED, 10, int(stay * 10)),
        )
    elapsed = time.perf_counter() - start
    ok = all(-0.65 <= s <= -0.35 for s in slopes.values()) and elapsed < 120.0
    detail = ", ".join(f"{k}: {v:.3f}" for k, v in slopes.items())
    line = report(10, ok, f"embedding error slopes {detail} (band [-0.65, -0.35], "
                  f"{elapsed:.1f}s)")
    assert ok, line


def test_weak_power_nondecreasing_in_coefficient(weak_power_run):
    """Power should grow with the dependence coefficient for each test,
    allowing one inversion within Monte-Carlo noise of 0.1."""
    rows, _ = weak_power_run
    for method in ("lancaster", "threeway_hsic"):
        rates = [r for _, r in sorted(simple_rates(rows, method).items())]
        inversions = sum(1 for a, b in zip(rates, rates[1:]) if b < a - 1e-12)
        tolerable = sum(1 for a, b in zip(rates, rates[1:]) if b < a - 0.1)
        assert inversions <= 1 and tolerable == 0, (method, rates)


def test_permutation_rate_trend_in_autocorrelation(fpr_run):
    """Permutation false positives should not fall as autocorrelation rises
    (within a 0.05 noise allowance across the grid)."""
    rows, _ = fpr_run
    rates = [r for _, r in sorted(simple_rates(rows, "permutation").items())]
    for earlier, later in zip(rates, rates[1:]):
        assert later >= earlier - 0.05, rates


def test_acceptance_11_desk_scale_determinism(tmp_path):
    """The desk-scale suite writes byte-identical CSVs across repeated runs
    and across worker counts."""
    experiments = ("power_weak_pairwise", "power_strong_pairwise", "fpr_study")
    outputs = {}
    for workers, tag in ((1, "a"), (2, "b")):
        for experiment in experiments:
            out = tmp_path / f"{experiment}_{tag}.csv"
            rc = cli_main(
                [
                    "--experiment",
                    experiment,
                    "--desk",
                    "--seed",
                    "11",
                    "--workers",
                    str(workers),
                    "--out",
                    str(out),
                ]
            )
            assert rc == 0
            outputs.setdefault(experiment, []).append(out.read_bytes())
    identical = all(blobs[0] == blobs[1] for blobs in outputs.values())
    sizes = {e: len(b[0]) for e, b in outputs.items()}
    ok = identical
    line = report(
        11, ok, f"desk suite byte-identical across runs and worker counts "
        f"{identical} (csv bytes: {sizes})"
    )
    assert ok, line
