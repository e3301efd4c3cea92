"""Gaussian kernel evaluation, Gram matrices, and centering transforms.

A series is an ``(n, d)`` float array of observations.  The Gram matrix of a
series under a Gaussian kernel with bandwidth ``sigma`` has entries
``exp(-||x_i - x_j||^2 / (2 sigma^2))``.  Centering a Gram matrix ``G``
replaces it with ``H G H`` where ``H = I - (1/n) 11^T``, i.e. it subtracts
the sample-mean feature from every feature before taking inner products.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .exceptions import DegenerateDataError, InputError

__all__ = [
    "KernelSpec",
    "GramMatrix",
    "as_series",
    "evaluate",
    "gram",
    "center_empirical",
    "center_matrix",
    "median_heuristic_bandwidth",
]

CENTERING_RAW = "raw"
CENTERING_EMPIRICAL = "empirical"
CENTERING_POPULATION = "population"


@dataclass(frozen=True)
class KernelSpec:
    """Gaussian kernel with bandwidth ``sigma`` (same units as the inputs)."""

    bandwidth: float = 1.0

    def __post_init__(self) -> None:
        if not np.isfinite(self.bandwidth) or self.bandwidth <= 0:
            raise InputError(f"kernel bandwidth must be a positive real, got {self.bandwidth}")


@dataclass(frozen=True)
class GramMatrix:
    """An ``n x n`` symmetric kernel matrix together with its centering state."""

    values: np.ndarray
    centering: str = CENTERING_RAW

    def __post_init__(self) -> None:
        if self.centering not in (CENTERING_RAW, CENTERING_EMPIRICAL, CENTERING_POPULATION):
            raise InputError(f"unknown centering state {self.centering!r}")

    @property
    def n(self) -> int:
        return self.values.shape[0]


def as_series(points) -> np.ndarray:
    """Coerce observations into an ``(n, d)`` float64 array.

    One-dimensional input is treated as ``n`` scalar observations.  Requires
    n >= 2 and a common dimension across points.
    """
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise InputError(f"series must be 1- or 2-dimensional, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise InputError(f"series needs at least 2 observations, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise InputError("series contains non-finite values")
    return arr


def evaluate(spec: KernelSpec, x, y) -> float:
    """Evaluate the Gaussian kernel at a single pair of points."""
    xv = np.atleast_1d(np.asarray(x, dtype=np.float64))
    yv = np.atleast_1d(np.asarray(y, dtype=np.float64))
    if xv.shape != yv.shape:
        raise InputError(f"point dimensions differ: {xv.shape} vs {yv.shape}")
    d2 = float(np.sum((xv - yv) ** 2))
    return float(np.exp(-d2 / (2.0 * spec.bandwidth**2)))


def gram(spec: KernelSpec, series) -> GramMatrix:
    """Raw Gram matrix of a series; exactly symmetric with unit diagonal."""
    pts = as_series(series)
    d2 = squareform(pdist(pts, "sqeuclidean"))
    values = np.exp(-d2 / (2.0 * spec.bandwidth**2))
    return GramMatrix(values=values, centering=CENTERING_RAW)


def _center_symmetric(values: np.ndarray) -> np.ndarray:
    # One-pass H G H for symmetric input.  np.add.outer keeps the result
    # exactly symmetric because float addition is commutative.
    mu = values.mean(axis=1)
    return values - np.add.outer(mu, mu) + mu.mean()


def center_empirical(g: GramMatrix) -> GramMatrix:
    """Empirically center a Gram matrix (idempotent)."""
    return GramMatrix(values=_center_symmetric(g.values), centering=CENTERING_EMPIRICAL)


def center_matrix(m: np.ndarray) -> np.ndarray:
    """Double-center an arbitrary square matrix: ``M - row means - column
    means + grand mean``, equal to ``H M H``.

    Symmetric input takes a path that preserves symmetry exactly.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"expected a square matrix, got shape {m.shape}")
    if np.array_equal(m, m.T):
        return _center_symmetric(m)
    row = m.mean(axis=1)
    col = m.mean(axis=0)
    return m - row[:, None] - col[None, :] + m.mean()


def median_heuristic_bandwidth(series) -> float:
    """Median of the pairwise Euclidean distances over distinct index pairs.

    Raises
    ------
    DegenerateDataError
        If every pairwise distance is zero; fix the bandwidth explicitly in
        that case.
    """
    pts = as_series(series)
    dists = pdist(pts, "euclidean")
    med = float(np.median(dists))
    if med <= 0.0:
        raise DegenerateDataError(
            "median pairwise distance is zero (too many identical points); "
            "set the kernel bandwidth explicitly"
        )
    return med
