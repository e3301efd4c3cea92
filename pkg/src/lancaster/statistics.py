"""Lancaster-interaction and HSIC test statistics and their core matrices.

Notation: for a triple of series with raw Gram matrices ``K, L, M`` (for the
X, Y, Z components) write ``Kc, Lc, Mc`` for the empirically centered
versions and ``A ++`` for the sum of all entries of ``A``.

The Lancaster interaction statistic in normalised form is

    (1/n) (Kc o Lc o Mc)++

where ``o`` is the entrywise product.  An algebraically equal form
re-centers the product of the non-target pair, e.g. for target Z:

    (1/n) (center(Kc o Lc) o Mc)++

The matrix ``center(Kc o Lc) o Mc`` is the *core* that the bootstrap
multiplies from both sides.  The 3-way HSIC core differs only in that the
pair matrices enter raw: ``center(K o L) o Mc``; its entry sum is the HSIC
statistic between the paired variable (X, Y) under the product kernel and Z.

Each of the three sub-hypotheses (target X, Y or Z independent of the other
two) uses the same construction with roles rotated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import InputError
from .kernels import KernelSpec, as_series, gram, _center_symmetric

__all__ = [
    "TARGETS",
    "TripleSeries",
    "CoreMatrix",
    "lancaster_statistic",
    "hsic_statistic",
    "lancaster_core",
    "threeway_hsic_core",
    "core_parts_from_grams",
    "core_from_grams",
]

TARGETS = ("X", "Y", "Z")

LANCASTER = "lancaster"
THREEWAY_HSIC = "threeway_hsic"
_KINDS = (LANCASTER, THREEWAY_HSIC)


@dataclass(frozen=True)
class TripleSeries:
    """Aligned observations of three (possibly vector-valued) processes."""

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", as_series(self.x))
        object.__setattr__(self, "y", as_series(self.y))
        object.__setattr__(self, "z", as_series(self.z))
        if not (len(self.x) == len(self.y) == len(self.z)):
            raise InputError(
                f"series lengths differ: {len(self.x)}, {len(self.y)}, {len(self.z)}"
            )

    @property
    def n(self) -> int:
        return len(self.x)

    def component(self, target: str) -> np.ndarray:
        return {"X": self.x, "Y": self.y, "Z": self.z}[target]


@dataclass(frozen=True)
class CoreMatrix:
    """Symmetric matrix bootstrapped for one sub-hypothesis.

    ``(1/n) values++`` is the observed statistic for that sub-hypothesis.
    """

    values: np.ndarray
    target: str
    kind: str = field(default=LANCASTER)

    def __post_init__(self) -> None:
        if self.target not in TARGETS:
            raise InputError(f"target must be one of {TARGETS}, got {self.target!r}")
        if self.kind not in _KINDS:
            raise InputError(f"kind must be one of {_KINDS}, got {self.kind!r}")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def statistic(self) -> float:
        return float(self.values.sum() / self.n)


def _check_target(target: str) -> None:
    if target not in TARGETS:
        raise InputError(f"target must be one of {TARGETS}, got {target!r}")


def _raw_grams(triple: TripleSeries, kx: KernelSpec, ky: KernelSpec, kz: KernelSpec):
    return (
        gram(kx, triple.x).values,
        gram(ky, triple.y).values,
        gram(kz, triple.z).values,
    )


def core_parts_from_grams(
    gx: np.ndarray,
    gy: np.ndarray,
    gz: np.ndarray,
    target: str,
    kind: str = LANCASTER,
) -> tuple[np.ndarray, np.ndarray]:
    """Split a core into (pair part, centered target Gram).

    The core equals the entrywise product of the two parts.  The split is
    what the permutation bootstrap permutes: re-indexing the target series
    permutes only the second factor.
    """
    _check_target(target)
    if kind not in _KINDS:
        raise InputError(f"kind must be one of {_KINDS}, got {kind!r}")
    raw = {"X": gx, "Y": gy, "Z": gz}
    pair_keys = [t for t in TARGETS if t != target]
    a, b = raw[pair_keys[0]], raw[pair_keys[1]]
    if kind == LANCASTER:
        pair_product = _center_symmetric(a) * _center_symmetric(b)
    else:
        pair_product = a * b
    pair_part = _center_symmetric(pair_product)
    target_centered = _center_symmetric(raw[target])
    return pair_part, target_centered


def core_from_grams(
    gx: np.ndarray,
    gy: np.ndarray,
    gz: np.ndarray,
    target: str,
    kind: str = LANCASTER,
) -> CoreMatrix:
    pair_part, target_centered = core_parts_from_grams(gx, gy, gz, target, kind)
    return CoreMatrix(values=pair_part * target_centered, target=target, kind=kind)


def lancaster_statistic(
    triple: TripleSeries,
    kx: KernelSpec = KernelSpec(),
    ky: KernelSpec = KernelSpec(),
    kz: KernelSpec = KernelSpec(),
) -> float:
    """Normalised Lancaster interaction statistic ``(1/n)(Kc o Lc o Mc)++``.

    Always nonnegative up to rounding: it is ``n`` times a squared RKHS norm.
    """
    if triple.n < 4:
        raise InputError(f"need at least 4 observations, got {triple.n}")
    gx, gy, gz = _raw_grams(triple, kx, ky, kz)
    prod = _center_symmetric(gx) * _center_symmetric(gy) * _center_symmetric(gz)
    return float(prod.sum() / triple.n)


def hsic_statistic(
    a,
    b,
    ka: KernelSpec = KernelSpec(),
    kb: KernelSpec = KernelSpec(),
) -> float:
    """Normalised two-variable HSIC statistic ``(1/n)(Kc o Lc)++``."""
    av = as_series(a)
    bv = as_series(b)
    if len(av) != len(bv):
        raise InputError(f"series lengths differ: {len(av)} vs {len(bv)}")
    ga = _center_symmetric(gram(ka, av).values)
    gb = _center_symmetric(gram(kb, bv).values)
    return float((ga * gb).sum() / len(av))


def lancaster_core(
    triple: TripleSeries,
    kx: KernelSpec = KernelSpec(),
    ky: KernelSpec = KernelSpec(),
    kz: KernelSpec = KernelSpec(),
    target: str = "Z",
) -> CoreMatrix:
    """Core matrix for one Lancaster sub-hypothesis.

    For target Z this is ``center(Kc o Lc) o Mc``; targets X and Y rotate
    the roles.  ``(1/n) values++`` equals :func:`lancaster_statistic` for
    every target.
    """
    if triple.n < 4:
        raise InputError(f"need at least 4 observations, got {triple.n}")
    gx, gy, gz = _raw_grams(triple, kx, ky, kz)
    return core_from_grams(gx, gy, gz, target, LANCASTER)


def threeway_hsic_core(
    triple: TripleSeries,
    kx: KernelSpec = KernelSpec(),
    ky: KernelSpec = KernelSpec(),
    kz: KernelSpec = KernelSpec(),
    target: str = "Z",
) -> CoreMatrix:
    """Core matrix for one 3-way HSIC sub-hypothesis.

    Identical to :func:`lancaster_core` except that the non-target pair
    enters with raw (uncentered) Gram matrices, making the statistic the
    HSIC between the paired variable and the target under a product kernel.
    """
    if triple.n < 4:
        raise InputError(f"need at least 4 observations, got {triple.n}")
    gx, gy, gz = _raw_grams(triple, kx, ky, kz)
    return core_from_grams(gx, gy, gz, target, THREEWAY_HSIC)
