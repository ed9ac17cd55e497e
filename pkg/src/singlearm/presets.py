"""Preconfigured study protocols used by the benchmarks, the CLI presets,
and the acceptance suite.

Three protocols are bundled:

* the benchmark grid: Weibull reference laws over a grid of shapes,
  medians, and hazard ratios, recruited uniformly for 3 years with 1 year
  of follow-up;
* the weight sweep: exponential laws calibrated to hit prescribed event
  rates in a short trial (1 year accrual, 1 year follow-up, 10% yearly
  dropout), swept over a dense weight grid and several sample sizes;
* the liver-study case: a Weibull reference with shape 1.22 and median 9
  years, a hazard ratio of 1.75, 5 years of accrual, and 3 years of
  follow-up.
"""

from __future__ import annotations

from .design import DesignSpec, WeightPolicy, expected_event_rate
from .models import (
    CensoringModel,
    Exponential,
    ExponentialDropout,
    NoDropout,
    UniformAccrual,
    Weibull,
)
from .numerics import find_root

__all__ = [
    "BENCHMARK_SHAPES",
    "BENCHMARK_MEDIANS",
    "BENCHMARK_HAZARD_RATIOS",
    "BENCHMARK_ACCRUAL",
    "BENCHMARK_FOLLOW_UP",
    "BENCHMARK_POLICIES",
    "SWEEP_SAMPLE_SIZES",
    "SWEEP_WEIGHTS",
    "SWEEP_TARGET_RATES",
    "benchmark_censoring",
    "benchmark_null",
    "sweep_censoring",
    "sweep_truth",
    "pbc_design",
    "PBC_POLICIES",
]

BENCHMARK_SHAPES = (0.1, 0.25, 0.5, 1.0, 2.0, 5.0)
BENCHMARK_MEDIANS = (1.0, 2.0, 4.0)
BENCHMARK_HAZARD_RATIOS = (1.2, 1.5, 2.0)
BENCHMARK_ACCRUAL = 3.0
BENCHMARK_FOLLOW_UP = 1.0
BENCHMARK_POLICIES = (
    WeightPolicy.compensator(),
    WeightPolicy.counting(),
    WeightPolicy.wu(),
    WeightPolicy.uncorrelated_null(),
)

SWEEP_SAMPLE_SIZES = (25, 50, 100, 250, 500, 1000, 5000)
SWEEP_WEIGHTS = tuple(i / 100.0 for i in range(101))
SWEEP_TARGET_RATES = (0.2, 0.4, 0.6, 0.8)
_SWEEP_ACCRUAL = 1.0
_SWEEP_FOLLOW_UP = 1.0
_SWEEP_YEARLY_DROPOUT = 0.1

PBC_POLICIES = (
    WeightPolicy.compensator(),
    WeightPolicy.counting(),
    WeightPolicy.wu(),
    WeightPolicy.uncorrelated_null(),
)


def benchmark_censoring() -> CensoringModel:
    """Censoring environment of the benchmark grid."""
    return CensoringModel(
        UniformAccrual(BENCHMARK_ACCRUAL),
        NoDropout(),
        BENCHMARK_ACCRUAL + BENCHMARK_FOLLOW_UP,
    )


def benchmark_null(shape: float, median: float) -> Weibull:
    """Reference law of one benchmark grid cell."""
    return Weibull(shape, median)


def sweep_censoring() -> CensoringModel:
    """Censoring environment of the weight-sweep protocol."""
    return CensoringModel(
        UniformAccrual(_SWEEP_ACCRUAL),
        ExponentialDropout.from_yearly_rate(_SWEEP_YEARLY_DROPOUT),
        _SWEEP_ACCRUAL + _SWEEP_FOLLOW_UP,
    )


def sweep_truth(target_event_rate: float) -> Exponential:
    """Exponential law whose expected event rate under the sweep censoring
    equals the target; solved by bracketed root finding on the rate."""
    censoring = sweep_censoring()
    rate = find_root(
        lambda r: expected_event_rate(Exponential(r), censoring) - target_event_rate,
        1e-6,
        50.0,
    )
    return Exponential(rate)


def pbc_design(policy: WeightPolicy) -> DesignSpec:
    """Liver-study case: planning spec for the given weight policy."""
    return DesignSpec(
        null_model=Weibull(1.22, 9.0),
        follow_up=3.0,
        weight_policy=policy,
        hazard_ratio=1.75,
        accrual_length=5.0,
        alpha=0.05,
        beta=0.2,
    )
