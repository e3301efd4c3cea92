"""Exhaustive small-instance oracles for the algebraic identities.

Everything here works on finite supports where expectations are exact sums,
so the statements that hold only in population for continuous data (the
interaction measure vanishing under factorisation, degeneracy of the test
core, the root-n embedding rate) become directly checkable numbers.  The
double-loop V-statistic evaluator doubles as ground truth for the matrix
implementations in :mod:`lancaster.statistics`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.spatial.distance import cdist

from .exceptions import DegenerateDataError, InputError
from .kernels import CENTERING_POPULATION, GramMatrix, KernelSpec, as_series
from .synthdata import DiscreteJoint

__all__ = [
    "DiscreteMarginal",
    "lancaster_measure",
    "population_centered_gram",
    "core_h_expectation",
    "naive_v_statistic",
    "embedding_convergence_slope",
]


@dataclass(frozen=True)
class DiscreteMarginal:
    """Discrete distribution over finitely many support points."""

    values: np.ndarray
    probs: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        probs = np.asarray(self.probs, dtype=np.float64).reshape(-1)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "probs", probs)
        if len(values) != len(probs):
            raise InputError(
                f"{len(values)} support points but {len(probs)} probabilities"
            )
        if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-12:
            raise InputError("probabilities must be nonnegative and sum to 1")


def lancaster_measure(joint: DiscreteJoint) -> np.ndarray:
    """Signed interaction measure of a discrete joint, cell by cell.

    Entry (i, j, k) is

        p_ijk - p^XY_ij p^Z_k - p^XZ_ik p^Y_j - p^X_i p^YZ_jk
        + 2 p^X_i p^Y_j p^Z_k

    with every marginal an exhaustive sum over the tensor.  The table sums
    to zero, and vanishes identically whenever the joint factorises into a
    marginal times a pairwise marginal in any way.
    """
    p = joint.probs
    p_xy = p.sum(axis=2)
    p_xz = p.sum(axis=1)
    p_yz = p.sum(axis=0)
    p_x = p_xy.sum(axis=1)
    p_y = p_xy.sum(axis=0)
    p_z = p_xz.sum(axis=0)
    return (
        p
        - p_xy[:, :, None] * p_z[None, None, :]
        - p_xz[:, None, :] * p_y[None, :, None]
        - p_x[:, None, None] * p_yz[None, :, :]
        + 2.0 * p_x[:, None, None] * p_y[None, :, None] * p_z[None, None, :]
    )


def _cross_kernel(spec: KernelSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d2 = cdist(a, b, "sqeuclidean")
    return np.exp(-d2 / (2.0 * spec.bandwidth**2))


def population_centered_gram(
    series, spec: KernelSpec, marginal: DiscreteMarginal
) -> GramMatrix:
    """Gram matrix centered against an exactly known discrete marginal.

    Entry (i, j) is ``k(x_i, x_j) - E k(x_i, S) - E k(S, x_j) + E k(S, S')``
    with the expectations exact sums over the marginal.  With the empirical
    distribution of the series itself as the marginal this reproduces
    empirical centering exactly.
    """
    pts = as_series(series)
    support = marginal.values
    if pts.shape[1] != support.shape[1]:
        raise InputError(
            f"series dimension {pts.shape[1]} does not match "
            f"support dimension {support.shape[1]}"
        )
    q = marginal.probs
    k_ss = _cross_kernel(spec, pts, pts)
    k_sm = _cross_kernel(spec, pts, support)
    k_mm = _cross_kernel(spec, support, support)
    mean_per_point = k_sm @ q
    grand = float(q @ k_mm @ q)
    values = k_ss - np.add.outer(mean_per_point, mean_per_point) + grand
    return GramMatrix(values=values, centering=CENTERING_POPULATION)


def _axis_marginal(joint: DiscreteJoint, axis: int) -> np.ndarray:
    axes = tuple(a for a in range(3) if a != axis)
    return joint.probs.sum(axis=axes)


def _centered_tables(spec: KernelSpec, support: np.ndarray, q: np.ndarray, point: np.ndarray):
    """Population-centered kernel on a support, as a table plus the column
    of evaluations against one extra fixed point."""
    sup = support.reshape(-1, 1)
    k_tab = _cross_kernel(spec, sup, sup)
    k_point = _cross_kernel(spec, sup, point.reshape(1, -1))[:, 0]
    row_mean = k_tab @ q
    grand = float(q @ k_tab @ q)
    tab = k_tab - np.add.outer(row_mean, row_mean) + grand
    col = k_point - float(q @ k_point) - row_mean + grand
    return tab, col


def core_h_expectation(
    joint: DiscreteJoint,
    kx: KernelSpec,
    ky: KernelSpec,
    kz: KernelSpec,
    point: tuple[float, float, float],
    target: str = "Z",
) -> float:
    """Exact expectation of the sub-hypothesis core against a fixed point.

    The core pairs the population-centered product kernel of the non-target
    pair, itself re-centered against the pair's joint marginal, with the
    population-centered target kernel.  When the joint factorises so that
    the target is independent of the pair, this expectation is zero for
    every fixed point: the core is degenerate, which is what licenses the
    wild bootstrap.
    """
    if target not in ("X", "Y", "Z"):
        raise InputError(f"target must be one of X, Y, Z, got {target!r}")
    supports = (joint.x_support, joint.y_support, joint.z_support)
    specs = (kx, ky, kz)
    s = np.asarray(point, dtype=np.float64).reshape(-1)
    if s.shape != (3,):
        raise InputError(f"fixed point must have three scalar coordinates, got {point!r}")

    target_axis = {"X": 0, "Y": 1, "Z": 2}[target]
    pair_axes = tuple(a for a in range(3) if a != target_axis)
    a1, a2 = pair_axes

    tab1, col1 = _centered_tables(
        specs[a1], supports[a1], _axis_marginal(joint, a1), s[a1 : a1 + 1]
    )
    tab2, col2 = _centered_tables(
        specs[a2], supports[a2], _axis_marginal(joint, a2), s[a2 : a2 + 1]
    )
    _, col_t = _centered_tables(
        specs[target_axis],
        supports[target_axis],
        _axis_marginal(joint, target_axis),
        s[target_axis : target_axis + 1],
    )

    # Pair variable T on the product support, with its joint marginal.
    n1, n2 = len(supports[a1]), len(supports[a2])
    pair_marginal = joint.probs.sum(axis=target_axis).reshape(n1 * n2)
    g_tab = np.einsum("ac,bd->abcd", tab1, tab2).reshape(n1 * n2, n1 * n2)
    g_col = np.outer(col1, col2).reshape(n1 * n2)

    # Re-center the product kernel against the pair marginal, evaluated at
    # (support point, fixed point).
    g_centered_col = (
        g_col
        - float(pair_marginal @ g_col)
        - g_tab @ pair_marginal
        + float(pair_marginal @ g_tab @ pair_marginal)
    )

    # Exhaustive expectation over the full joint.
    probs_pair_target = np.moveaxis(joint.probs, target_axis, 2).reshape(n1 * n2, -1)
    return float(g_centered_col @ probs_pair_target @ col_t)


def naive_v_statistic(
    core_evaluator: Callable, samples: Sequence
) -> float:
    """Plain double-loop V-statistic ``(1/n^2) sum_ij h(S_i, S_j)``.

    Deliberately free of matrix shortcuts so it can serve as ground truth
    for the vectorised statistics.
    """
    n = len(samples)
    if n < 1:
        raise InputError("need at least one sample")
    total = 0.0
    for si in samples:
        for sj in samples:
            total += core_evaluator(si, sj)
    return total / (n * n)


def embedding_convergence_slope(
    gen: Callable[[int, np.random.Generator], np.ndarray],
    spec: KernelSpec,
    marginal: DiscreteMarginal,
    n_grid: Sequence[int],
    replicates: int,
    rng: np.random.Generator,
) -> float:
    """Fitted log-log slope of the mean-embedding error against sample size.

    ``gen(n, rng)`` must return ``n`` draws taking values in the marginal's
    support and whose stationary law is the marginal; the embedding error
    ``||mu_hat - mu||`` then reduces to an exact quadratic form in the
    support-frequency deviations.  For processes with enough mixing the
    median error decays like ``n**-0.5``, i.e. a slope near -0.5.
    """
    sizes = [int(n) for n in n_grid]
    if len(sizes) < 2 or sorted(set(sizes)) != sizes:
        raise InputError(f"n_grid must be strictly increasing with >= 2 sizes, got {n_grid}")
    if replicates < 1:
        raise InputError(f"need at least one replicate, got {replicates}")

    support = marginal.values
    k_mm = _cross_kernel(spec, support, support)
    streams = rng.spawn(len(sizes) * replicates)

    medians = []
    for i, n in enumerate(sizes):
        errors = np.empty(replicates)
        for r in range(replicates):
            draws = np.asarray(gen(n, streams[i * replicates + r]), dtype=np.float64)
            idx = _support_indices(draws, support)
            freq = np.bincount(idx, minlength=len(support)) / n
            q = freq - marginal.probs
            errors[r] = np.sqrt(max(float(q @ k_mm @ q), 0.0))
        medians.append(float(np.median(errors)))

    if min(medians) <= 0.0:
        raise DegenerateDataError(
            "median embedding error is exactly zero; the convergence slope is undefined"
        )
    slope, _ = np.polyfit(np.log(sizes), np.log(medians), 1)
    return float(slope)


def _support_indices(draws: np.ndarray, support: np.ndarray) -> np.ndarray:
    pts = draws.reshape(len(draws), -1)
    if pts.shape[1] != support.shape[1]:
        raise InputError(
            f"draws have dimension {pts.shape[1]}, support has {support.shape[1]}"
        )
    matches = np.all(pts[:, None, :] == support[None, :, :], axis=2)
    hits = matches.sum(axis=1)
    if not np.all(hits == 1):
        raise InputError("generator emitted values outside the marginal support")
    return np.argmax(matches, axis=1)
