"""Adversarial lower-bound constructions and benchmarks for one-dimensional
mean estimation on finite atomic distributions."""

from .adversary import (
    AdversaryResult,
    Case,
    RatioReport,
    RegimeFlags,
    Sign,
    construct_q,
    density_ratio,
    mean_shift,
    regime_flags,
    skew_measures,
    solve_skew,
)
from .distribution import (
    AtomicDistribution,
    TrimResult,
    WeightedMeasure,
    epsilon,
    load_distribution,
    mean,
    mixture,
    normalize,
    reweight,
    save_distribution,
    scale,
    shift,
    standard_trim,
    std,
    trim,
    variance,
)
from .divergence import HellingerReport, bhattacharyya, hellinger_sq, indistinguishable
from .errors import (
    DegenerateError,
    DomainError,
    InsufficientSamplesError,
    RegimeError,
)
from .estimators import SampleBatch, group_count, median_of_means, sample_mean
from .harness import (
    Condition,
    TrialConfig,
    VerificationReport,
    asymptotic_scan,
    bench_mom,
    brute_force_trim,
    lr_test_error,
    sample,
    trial_stream,
    verify_neighborhood,
    verify_theorem,
)

__all__ = [
    "AdversaryResult",
    "AtomicDistribution",
    "Case",
    "Condition",
    "DegenerateError",
    "DomainError",
    "HellingerReport",
    "InsufficientSamplesError",
    "RatioReport",
    "RegimeError",
    "RegimeFlags",
    "SampleBatch",
    "Sign",
    "TrialConfig",
    "TrimResult",
    "VerificationReport",
    "WeightedMeasure",
    "asymptotic_scan",
    "bench_mom",
    "bhattacharyya",
    "brute_force_trim",
    "construct_q",
    "density_ratio",
    "epsilon",
    "group_count",
    "hellinger_sq",
    "indistinguishable",
    "load_distribution",
    "lr_test_error",
    "mean",
    "mean_shift",
    "median_of_means",
    "mixture",
    "normalize",
    "regime_flags",
    "reweight",
    "sample",
    "sample_mean",
    "save_distribution",
    "scale",
    "shift",
    "skew_measures",
    "solve_skew",
    "standard_trim",
    "std",
    "trial_stream",
    "trim",
    "variance",
    "verify_neighborhood",
    "verify_theorem",
]
__version__ = "0.1.0"
