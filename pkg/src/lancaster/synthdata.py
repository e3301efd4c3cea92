"""Seeded generators for the synthetic benchmark processes.

Three autoregressive triples, all driven by independent standard-normal
innovations and N(0, 1) initial states:

* ``weak_pairwise``: X and Y are AR(1/2) chains; Z couples to them only
  through ``d |theta_t| sign(X_t Y_t)``, so the three variables are pairwise
  independent but jointly dependent.
* ``independent``: three mutually independent AR(a) chains; the composite
  null holds.
* ``strong_pairwise``: Z couples linearly through ``d (X_t + Y_t)``, so Z is
  pairwise dependent on both X and Y.

Stream discipline (stable across releases because regression fixtures pin
it): the generator RNG is split with ``rng.spawn``, one child per variable
in X, Y, Z order, plus a fourth child for the extra ``theta`` innovations of
the weak-pairwise recursion.  Within each child the initial state is drawn
first, then the innovation vector.  With ``burn_in > 0`` the recursion runs
for ``n + burn_in`` steps and the first ``burn_in`` samples are discarded;
the default of 0 keeps the literal recursion from the N(0, 1) initial state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .exceptions import InputError
from .statistics import TripleSeries

__all__ = [
    "ArTripleSpec",
    "DiscreteJoint",
    "gen_weak_pairwise",
    "gen_independent_ar",
    "gen_strong_pairwise",
    "sample_discrete",
]

WEAK_PAIRWISE = "weak_pairwise"
INDEPENDENT = "independent"
STRONG_PAIRWISE = "strong_pairwise"
_KINDS = (WEAK_PAIRWISE, INDEPENDENT, STRONG_PAIRWISE)


@dataclass(frozen=True)
class ArTripleSpec:
    """Shape of one synthetic triple: process kind, length, coefficient."""

    kind: str
    n: int
    coeff: float
    burn_in: int = 0

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise InputError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if self.n < 1:
            raise InputError(f"series length must be >= 1, got {self.n}")
        if self.burn_in < 0:
            raise InputError(f"burn-in must be >= 0, got {self.burn_in}")
        if self.kind == INDEPENDENT and not abs(self.coeff) < 1:
            raise InputError(
                f"|a| < 1 required for a stationary AR(1) chain, got a={self.coeff}"
            )


def _ar1(innovations: np.ndarray, coeff: float, initial: float) -> np.ndarray:
    # X_t = coeff * X_{t-1} + innovations_t, started from X_0 = initial
    # (the initial state itself is not part of the output).
    out, _ = lfilter([1.0], [1.0, -coeff], innovations, zi=np.array([coeff * initial]))
    return out


def _initial_and_innovations(rng: np.random.Generator, total: int):
    initial = rng.standard_normal()
    return initial, rng.standard_normal(total)


def _require_kind(spec: ArTripleSpec, kind: str) -> None:
    if spec.kind != kind:
        raise InputError(f"spec kind is {spec.kind!r}, expected {kind!r}")


def gen_weak_pairwise(spec: ArTripleSpec, rng: np.random.Generator) -> TripleSeries:
    """Pairwise-independent, jointly dependent triple.

    ``Z_t = Z_{t-1}/2 + d |theta_t| sign(X_t Y_t) + zeta_t`` with X, Y
    independent AR(1/2) chains.
    """
    _require_kind(spec, WEAK_PAIRWISE)
    rx, ry, rz, rtheta = rng.spawn(4)
    total = spec.n + spec.burn_in
    x0, ex = _initial_and_innovations(rx, total)
    y0, ey = _initial_and_innovations(ry, total)
    z0, ez = _initial_and_innovations(rz, total)
    theta = rtheta.standard_normal(total)
    x = _ar1(ex, 0.5, x0)
    y = _ar1(ey, 0.5, y0)
    z = _ar1(spec.coeff * np.abs(theta) * np.sign(x * y) + ez, 0.5, z0)
    cut = spec.burn_in
    return TripleSeries(x[cut:], y[cut:], z[cut:])


def gen_independent_ar(spec: ArTripleSpec, rng: np.random.Generator) -> TripleSeries:
    """Three mutually independent AR(a) chains (the composite null is true)."""
    _require_kind(spec, INDEPENDENT)
    rx, ry, rz = rng.spawn(3)
    total = spec.n + spec.burn_in
    series = []
    for r in (rx, ry, rz):
        s0, innov = _initial_and_innovations(r, total)
        series.append(_ar1(innov, spec.coeff, s0))
    cut = spec.burn_in
    return TripleSeries(series[0][cut:], series[1][cut:], series[2][cut:])


def gen_strong_pairwise(spec: ArTripleSpec, rng: np.random.Generator) -> TripleSeries:
    """Pairwise- and jointly dependent triple: ``Z_t = Z_{t-1}/2 + d (X_t + Y_t) + zeta_t``."""
    _require_kind(spec, STRONG_PAIRWISE)
    rx, ry, rz = rng.spawn(3)
    total = spec.n + spec.burn_in
    x0, ex = _initial_and_innovations(rx, total)
    y0, ey = _initial_and_innovations(ry, total)
    z0, ez = _initial_and_innovations(rz, total)
    x = _ar1(ex, 0.5, x0)
    y = _ar1(ey, 0.5, y0)
    z = _ar1(spec.coeff * (x + y) + ez, 0.5, z0)
    cut = spec.burn_in
    return TripleSeries(x[cut:], y[cut:], z[cut:])


@dataclass(frozen=True)
class DiscreteJoint:
    """Exhaustive joint distribution on a small finite support.

    ``probs[i, j, k]`` is the probability of the support triple
    ``(x_support[i], y_support[j], z_support[k])``.
    """

    probs: np.ndarray
    x_support: np.ndarray
    y_support: np.ndarray
    z_support: np.ndarray

    def __post_init__(self) -> None:
        probs = np.asarray(self.probs, dtype=np.float64)
        object.__setattr__(self, "probs", probs)
        for name in ("x_support", "y_support", "z_support"):
            object.__setattr__(
                self, name, np.asarray(getattr(self, name), dtype=np.float64).reshape(-1)
            )
        if probs.ndim != 3:
            raise InputError(f"probability tensor must be 3-dimensional, got {probs.ndim}")
        if probs.shape != (len(self.x_support), len(self.y_support), len(self.z_support)):
            raise InputError(
                f"tensor shape {probs.shape} does not match support sizes "
                f"({len(self.x_support)}, {len(self.y_support)}, {len(self.z_support)})"
            )
        if np.any(probs < 0):
            raise InputError("probabilities must be nonnegative")
        if abs(probs.sum() - 1.0) > 1e-12:
            raise InputError(f"probabilities must sum to 1, got {probs.sum()!r}")

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.probs.shape


def sample_discrete(joint: DiscreteJoint, n: int, rng: np.random.Generator) -> TripleSeries:
    """Draw ``n`` i.i.d. triples from a discrete joint distribution."""
    if n < 2:
        raise InputError(f"need n >= 2 samples, got {n}")
    flat = rng.choice(joint.probs.size, size=n, p=joint.probs.ravel())
    ix, iy, iz = np.unravel_index(flat, joint.shape)
    return TripleSeries(
        joint.x_support[ix], joint.y_support[iy], joint.z_support[iz]
    )
