"""Kernel tests for three-variable interaction in stationary time series.

The composite null hypothesis is that the joint distribution of three
observed processes factorises into a marginal times a pairwise marginal in
some way.  The package provides the Lancaster interaction statistic and a
3-way HSIC alternative, calibrated either with a wild bootstrap that remains
valid under temporal dependence or with the permutation bootstrap that is
only valid for i.i.d. data; exhaustive discrete-support oracles verify the
algebra behind the tests, and an experiment harness reproduces the synthetic
power and false-positive-rate benchmarks.
"""

from .exceptions import DegenerateDataError, InputError
from .kernels import (
    GramMatrix,
    KernelSpec,
    as_series,
    center_empirical,
    center_matrix,
    evaluate,
    gram,
    median_heuristic_bandwidth,
)
from .statistics import (
    CoreMatrix,
    TripleSeries,
    hsic_statistic,
    lancaster_core,
    lancaster_statistic,
    threeway_hsic_core,
)
from .bootstrap import (
    derive_rng,
    draw_wild_multipliers,
    p_value,
    permutation_statistic,
    wild_statistic,
)
from .testing import (
    CompositeResult,
    SubTestResult,
    TestConfig,
    correction_holm_bonferroni,
    correction_simple,
    lancaster_test,
    pairwise_hsic_test,
    test_subhypothesis,
    threeway_hsic_test,
)
from .synthdata import (
    ArTripleSpec,
    DiscreteJoint,
    gen_independent_ar,
    gen_strong_pairwise,
    gen_weak_pairwise,
    sample_discrete,
)
from .oracle import (
    DiscreteMarginal,
    core_h_expectation,
    embedding_convergence_slope,
    lancaster_measure,
    naive_v_statistic,
    population_centered_gram,
)
from .experiments import (
    ExperimentSpec,
    ResultRow,
    emit_plot,
    emit_results,
    ingest_returns_csv,
    run_fpr_study,
    run_power_curve,
    run_single_test,
    write_triple_csv,
)

__version__ = "0.1.0"

__all__ = [
    "ArTripleSpec",
    "CompositeResult",
    "CoreMatrix",
    "DegenerateDataError",
    "DiscreteJoint",
    "DiscreteMarginal",
    "ExperimentSpec",
    "GramMatrix",
    "InputError",
    "KernelSpec",
    "ResultRow",
    "SubTestResult",
    "TestConfig",
    "TripleSeries",
    "as_series",
    "center_empirical",
    "center_matrix",
    "core_h_expectation",
    "correction_holm_bonferroni",
    "correction_simple",
    "derive_rng",
    "draw_wild_multipliers",
    "embedding_convergence_slope",
    "emit_plot",
    "emit_results",
    "evaluate",
    "gen_independent_ar",
    "gen_strong_pairwise",
    "gen_weak_pairwise",
    "gram",
    "hsic_statistic",
    "ingest_returns_csv",
    "lancaster_core",
    "lancaster_measure",
    "lancaster_statistic",
    "lancaster_test",
    "median_heuristic_bandwidth",
    "naive_v_statistic",
    "p_value",
    "pairwise_hsic_test",
    "permutation_statistic",
    "population_centered_gram",
    "run_fpr_study",
    "run_power_curve",
    "run_single_test",
    "sample_discrete",
    "test_subhypothesis",
    "threeway_hsic_core",
    "threeway_hsic_test",
    "wild_statistic",
    "write_triple_csv",
]
