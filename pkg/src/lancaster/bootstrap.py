"""Null-distribution resampling: wild and permutation bootstraps.

The wild bootstrap draws a dependent Gaussian multiplier vector

    W[0] ~ N(0, 1),   W[t] = r W[t-1] + sqrt(1 - r^2) e[t],   r = exp(-1/l)

(each ``e[t]`` an independent standard normal) so every ``W[t]`` is
marginally N(0, 1) with lag-1 autocorrelation ``r``, and resamples the
statistic as ``(1/n) W^T C W`` for a core matrix ``C``.  ``l`` is the
dependence length of the multiplier process, in samples.

The permutation bootstrap re-indexes the target series uniformly at random
and recomputes the statistic; it is only valid for i.i.d. data and is kept
as the baseline whose failure under temporal dependence the wild bootstrap
repairs.

Every replicate owns a private RNG stream derived from (seed, path) with
:func:`derive_rng`, so results do not depend on execution order.
"""

from __future__ import annotations

import numpy as np
from scipy.signal import lfilter

from .exceptions import InputError
from .kernels import KernelSpec
from .statistics import CoreMatrix, TripleSeries, lancaster_statistic

__all__ = [
    "derive_rng",
    "draw_wild_multipliers",
    "wild_statistic",
    "wild_bootstrap_draws",
    "permutation_statistic",
    "permutation_bootstrap_draws",
    "p_value",
]

try:  # pragma: no cover - exercised implicitly by the fast path
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


def derive_rng(seed: int, *path: int) -> np.random.Generator:
    """Deterministic counter-split RNG stream for (seed, path).

    Streams with distinct paths are statistically independent, so parallel
    replicates can each derive their own stream up front.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(path)))


def _multiplier_matrix(
    n: int, dependence_length: float, rngs: list[np.random.Generator]
) -> np.ndarray:
    """Stack one multiplier vector per RNG stream into a (len(rngs), n) array."""
    if dependence_length <= 0:
        raise InputError(f"dependence length must be positive, got {dependence_length}")
    if n < 1:
        raise InputError(f"need n >= 1 multipliers, got {n}")
    r = np.exp(-1.0 / dependence_length)
    s = np.sqrt(1.0 - r * r)
    u = np.empty((len(rngs), n))
    for i, rng in enumerate(rngs):
        u[i, 0] = rng.standard_normal()
        if n > 1:
            u[i, 1:] = s * rng.standard_normal(n - 1)
    if n == 1:
        return u
    return lfilter([1.0], [1.0, -r], u, axis=1)


def draw_wild_multipliers(
    n: int, dependence_length: float, rng: np.random.Generator
) -> np.ndarray:
    """One length-``n`` multiplier vector from the AR(1) wild process."""
    return _multiplier_matrix(n, dependence_length, [rng])[0]


def _core_values(core) -> np.ndarray:
    return core.values if isinstance(core, CoreMatrix) else np.asarray(core, dtype=np.float64)


def wild_statistic(core, w: np.ndarray) -> float:
    """Bootstrap statistic ``(1/n) w^T C w`` for one multiplier vector."""
    values = _core_values(core)
    w = np.asarray(w, dtype=np.float64)
    n = values.shape[0]
    if w.shape != (n,):
        raise InputError(f"multiplier vector has shape {w.shape}, core is {n}x{n}")
    return float(w @ values @ w / n)


def wild_bootstrap_draws(
    core,
    rngs: list[np.random.Generator],
    dependence_length: float,
) -> np.ndarray:
    """Batched wild draws, one per RNG stream."""
    values = _core_values(core)
    n = values.shape[0]
    w = _multiplier_matrix(n, dependence_length, rngs)
    t = w @ values
    return np.einsum("bi,bi->b", t, w) / n


def permutation_statistic(
    triple: TripleSeries,
    kx: KernelSpec,
    ky: KernelSpec,
    kz: KernelSpec,
    target: str,
    rng: np.random.Generator,
) -> float:
    """Lancaster statistic after uniformly permuting the target series."""
    perm = rng.permutation(triple.n)
    parts = {
        "X": (triple.x[perm], triple.y, triple.z),
        "Y": (triple.x, triple.y[perm], triple.z),
        "Z": (triple.x, triple.y, triple.z[perm]),
    }
    if target not in parts:
        raise InputError(f"target must be one of X, Y, Z, got {target!r}")
    x, y, z = parts[target]
    return lancaster_statistic(TripleSeries(x, y, z), kx, ky, kz)


if _HAVE_NUMBA:

    @njit(cache=True)
    def _permuted_quadratic_batch(pair_part, target_centered, perms):  # pragma: no cover
        count, n = perms.shape
        out = np.empty(count)
        for b in range(count):
            s = 0.0
            for i in range(n):
                row = pair_part[i]
                trow = target_centered[perms[b, i]]
                for j in range(n):
                    s += row[j] * trow[perms[b, j]]
            out[b] = s / n
        return out

else:

    def _permuted_quadratic_batch(pair_part, target_centered, perms):
        count, n = perms.shape
        out = np.empty(count)
        for b in range(count):
            p = perms[b]
            permuted = target_centered.take(p, axis=0).take(p, axis=1)
            out[b] = np.einsum("ij,ij->", pair_part, permuted) / n
        return out


def permutation_bootstrap_draws(
    pair_part: np.ndarray,
    target_centered: np.ndarray,
    rngs: list[np.random.Generator],
) -> np.ndarray:
    """Batched permutation draws of ``(1/n) sum_ij pair[i,j] target[p(i),p(j)]``.

    Permuting only the centered target Gram is exactly the statistic of the
    data with the target series re-indexed, because double centering
    commutes with simultaneous row/column permutation.
    """
    n = pair_part.shape[0]
    perms = np.empty((len(rngs), n), dtype=np.int64)
    for i, rng in enumerate(rngs):
        perms[i] = rng.permutation(n)
    return _permuted_quadratic_batch(pair_part, target_centered, perms)


def p_value(observed: float, draws) -> float:
    """Add-one Monte-Carlo p-value ``(1 + #{draws >= observed}) / (N + 1)``.

    Ties count toward the draws, the conservative side, and the estimate can
    never reach zero: the smallest attainable value is ``1/(N+1)``.
    """
    draws = np.asarray(draws, dtype=np.float64)
    if draws.size == 0:
        raise InputError("p_value needs at least one bootstrap draw")
    if not np.all(np.isfinite(draws)):
        raise InputError("bootstrap draws contain non-finite values")
    return float((1.0 + np.count_nonzero(draws >= observed)) / (draws.size + 1.0))
