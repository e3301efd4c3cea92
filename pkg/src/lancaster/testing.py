"""Composite three-variable interaction tests with multiple-testing control.

The composite null is that the joint distribution factorises in some way,
i.e. at least one of the three variables is independent of the other two.
Each sub-hypothesis (target X, Y or Z independent of the rest) is tested by
bootstrapping its core matrix; the composite rejects according to the chosen
correction applied to the three sub-test p-values:

* ``simple``: reject iff every p-value is at most alpha.  This bounds the
  overall Type I error by alpha because under the null at least one
  sub-hypothesis is true.
* ``holm_bonferroni``: reject iff the sorted p-values fall below
  alpha/3, alpha/2, alpha respectively (strictly more conservative).

Rejection boundaries are inclusive (p <= threshold).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bootstrap import (
    derive_rng,
    p_value,
    permutation_bootstrap_draws,
    wild_bootstrap_draws,
)
from .exceptions import InputError
from .kernels import KernelSpec, _center_symmetric, as_series, gram
from .statistics import (
    LANCASTER,
    TARGETS,
    THREEWAY_HSIC,
    TripleSeries,
    core_parts_from_grams,
)

__all__ = [
    "TestConfig",
    "SubTestResult",
    "CompositeResult",
    "test_subhypothesis",
    "correction_simple",
    "correction_holm_bonferroni",
    "lancaster_test",
    "threeway_hsic_test",
    "pairwise_hsic_test",
]

WILD = "wild"
PERMUTATION = "permutation"
SIMPLE = "simple"
HOLM_BONFERRONI = "holm_bonferroni"

_TARGET_INDEX = {t: i for i, t in enumerate(TARGETS)}


@dataclass(frozen=True)
class TestConfig:
    """Everything a test run depends on besides the data itself."""

    __test__ = False  # statistical test, not a pytest case

    kernel_x: KernelSpec = field(default_factory=KernelSpec)
    kernel_y: KernelSpec = field(default_factory=KernelSpec)
    kernel_z: KernelSpec = field(default_factory=KernelSpec)
    n_bootstrap: int = 250
    dependence_length: float = 20.0
    alpha: float = 0.05
    correction: str = SIMPLE
    method: str = WILD
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_bootstrap < 1:
            raise InputError(f"need at least one bootstrap draw, got {self.n_bootstrap}")
        if not 0.0 < self.alpha < 1.0:
            raise InputError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.dependence_length <= 0:
            raise InputError(
                f"dependence length must be positive, got {self.dependence_length}"
            )
        if self.correction not in (SIMPLE, HOLM_BONFERRONI):
            raise InputError(f"unknown correction {self.correction!r}")
        if self.method not in (WILD, PERMUTATION):
            raise InputError(f"unknown bootstrap method {self.method!r}")


@dataclass(frozen=True)
class SubTestResult:
    target: str
    statistic: float
    p: float
    n_draws: int


@dataclass(frozen=True)
class CompositeResult:
    sub: tuple[SubTestResult, SubTestResult, SubTestResult]
    reject_h0: bool
    correction: str

    @property
    def p_values(self) -> tuple[float, float, float]:
        return tuple(s.p for s in self.sub)

    @property
    def statistics(self) -> tuple[float, float, float]:
        return tuple(s.statistic for s in self.sub)


def correction_simple(p_values, alpha: float) -> bool:
    """Reject iff all three p-values are at most alpha."""
    p = sorted(p_values)
    if len(p) != 3:
        raise InputError(f"expected exactly three p-values, got {len(p)}")
    return p[2] <= alpha


def correction_holm_bonferroni(p_values, alpha: float) -> bool:
    """Reject iff sorted p-values are below alpha/3, alpha/2, alpha in order."""
    p = sorted(p_values)
    if len(p) != 3:
        raise InputError(f"expected exactly three p-values, got {len(p)}")
    return p[0] <= alpha / 3.0 and p[1] <= alpha / 2.0 and p[2] <= alpha


_CORRECTIONS = {SIMPLE: correction_simple, HOLM_BONFERRONI: correction_holm_bonferroni}


def _subtest_from_parts(
    pair_part: np.ndarray,
    target_centered: np.ndarray,
    target: str,
    cfg: TestConfig,
) -> SubTestResult:
    n = pair_part.shape[0]
    observed = float((pair_part * target_centered).sum() / n)
    rngs = [
        derive_rng(cfg.seed, _TARGET_INDEX[target], b) for b in range(cfg.n_bootstrap)
    ]
    if cfg.method == WILD:
        draws = wild_bootstrap_draws(
            pair_part * target_centered, rngs, cfg.dependence_length
        )
    else:
        draws = permutation_bootstrap_draws(pair_part, target_centered, rngs)
    return SubTestResult(
        target=target,
        statistic=observed,
        p=p_value(observed, draws),
        n_draws=cfg.n_bootstrap,
    )


def test_subhypothesis(
    triple: TripleSeries,
    target: str,
    cfg: TestConfig,
    statistic_kind: str = LANCASTER,
) -> SubTestResult:
    """Test one sub-hypothesis (``target`` independent of the other two)."""
    if triple.n < 4:
        raise InputError(f"need at least 4 observations, got {triple.n}")
    gx = gram(cfg.kernel_x, triple.x).values
    gy = gram(cfg.kernel_y, triple.y).values
    gz = gram(cfg.kernel_z, triple.z).values
    pair_part, target_centered = core_parts_from_grams(
        gx, gy, gz, target, statistic_kind
    )
    return _subtest_from_parts(pair_part, target_centered, target, cfg)


test_subhypothesis.__test__ = False  # statistical test, not a pytest case


def _composite(triple: TripleSeries, cfg: TestConfig, statistic_kind: str) -> CompositeResult:
    if triple.n < 4:
        raise InputError(f"need at least 4 observations, got {triple.n}")
    # The three sub-tests share the Gram matrices but own independent
    # bootstrap streams keyed by the target index.
    gx = gram(cfg.kernel_x, triple.x).values
    gy = gram(cfg.kernel_y, triple.y).values
    gz = gram(cfg.kernel_z, triple.z).values
    sub = []
    for target in TARGETS:
        pair_part, target_centered = core_parts_from_grams(
            gx, gy, gz, target, statistic_kind
        )
        sub.append(_subtest_from_parts(pair_part, target_centered, target, cfg))
    sub = tuple(sub)
    reject = _CORRECTIONS[cfg.correction]([s.p for s in sub], cfg.alpha)
    return CompositeResult(sub=sub, reject_h0=reject, correction=cfg.correction)


def lancaster_test(triple: TripleSeries, cfg: TestConfig) -> CompositeResult:
    """Composite Lancaster interaction test over all three sub-hypotheses."""
    return _composite(triple, cfg, LANCASTER)


def threeway_hsic_test(triple: TripleSeries, cfg: TestConfig) -> CompositeResult:
    """Composite 3-way HSIC test: HSIC of each {pair, singleton} grouping."""
    return _composite(triple, cfg, THREEWAY_HSIC)


def pairwise_hsic_test(a, b, cfg: TestConfig) -> SubTestResult:
    """Two-variable HSIC test between series ``a`` and ``b``.

    The core is the entrywise product of the two centered Gram matrices.
    With ``method="permutation"`` the second series is the one re-indexed;
    the result's ``target`` is reported as ``"Y"`` accordingly.
    """
    av = as_series(a)
    bv = as_series(b)
    if len(av) != len(bv):
        raise InputError(f"series lengths differ: {len(av)} vs {len(bv)}")
    ga = _center_symmetric(gram(cfg.kernel_x, av).values)
    gb = _center_symmetric(gram(cfg.kernel_y, bv).values)
    return _subtest_from_parts(ga, gb, "Y", cfg)
