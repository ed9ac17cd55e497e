"""One-sample log-rank testing on subject-level records.

The observed data per subject are the entry time Y, the time on study
X = T ^ C ^ (t - Y)+, and an event flag. The test compares the observed
event count N(t) with the count A0(t) expected under a reference
cumulative hazard, standardized by the weighted variance estimate
w N + (1 - w) A0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .design import WeightPolicy, resolve_weight
from .errors import DataValidationError, IndeterminateTestError, PolicyError
from .models import CensoringModel, SurvivalModel
from .numerics import normal_cdf, normal_quantile

__all__ = [
    "SubjectRecord",
    "TrialDataset",
    "TestOutcome",
    "RandomWeightResult",
    "ConvergenceEntry",
    "ConvergenceReport",
    "counting_and_compensator",
    "run_test",
    "random_weight_km",
    "km_weight_from_arrays",
    "consistency_check_random_weight",
]

# slack for float round-trips when checking x <= (t - y)+
_HORIZON_TOL = 1e-9


@dataclass(frozen=True)
class SubjectRecord:
    """One subject's observables at the analysis time.

    ``dropout`` distinguishes loss to follow-up from administrative
    censoring; it is optional and only consulted by the data-driven
    weight.
    """

    entry_time: float
    time_on_study: float
    event: bool
    dropout: bool | None = None

    def __post_init__(self) -> None:
        if self.entry_time < 0.0:
            raise DataValidationError(f"entry time must be non-negative, got {self.entry_time}")
        if self.time_on_study < 0.0:
            raise DataValidationError(f"time on study must be non-negative, got {self.time_on_study}")
        if self.event and self.dropout:
            raise DataValidationError("a subject cannot both have an event and drop out")


@dataclass(frozen=True)
class TrialDataset:
    """Immutable collection of subject records tied to an analysis time."""

    subjects: tuple[SubjectRecord, ...]
    analysis_time: float

    def __post_init__(self) -> None:
        if not self.subjects:
            raise DataValidationError("dataset contains no subjects")
        if not self.analysis_time > 0.0:
            raise DataValidationError("analysis time must be positive")
        t = self.analysis_time
        for i, rec in enumerate(self.subjects):
            if rec.entry_time > t:
                raise DataValidationError(
                    f"entry time {rec.entry_time} lies after the analysis time {t}",
                    record_index=i,
                )
            horizon = max(t - rec.entry_time, 0.0)
            if rec.time_on_study > horizon + _HORIZON_TOL:
                raise DataValidationError(
                    f"time on study {rec.time_on_study} exceeds the administrative "
                    f"horizon {horizon:.6g}",
                    record_index=i,
                )

    @classmethod
    def from_arrays(
        cls,
        entry_time,
        time_on_study,
        event,
        analysis_time: float,
        dropout=None,
    ) -> "TrialDataset":
        entry = np.asarray(entry_time, dtype=float)
        time = np.asarray(time_on_study, dtype=float)
        ev = np.asarray(event, dtype=bool)
        dr = None if dropout is None else np.asarray(dropout, dtype=bool)
        records = []
        for i in range(len(entry)):
            try:
                records.append(
                    SubjectRecord(
                        float(entry[i]),
                        float(time[i]),
                        bool(ev[i]),
                        None if dr is None else bool(dr[i]),
                    )
                )
            except DataValidationError as exc:
                raise DataValidationError(str(exc), record_index=i) from None
        return cls(tuple(records), float(analysis_time))

    def __len__(self) -> int:
        return len(self.subjects)

    @cached_property
    def entry_times(self) -> np.ndarray:
        return np.array([rec.entry_time for rec in self.subjects])

    @cached_property
    def times_on_study(self) -> np.ndarray:
        return np.array([rec.time_on_study for rec in self.subjects])

    @cached_property
    def events(self) -> np.ndarray:
        return np.array([rec.event for rec in self.subjects], dtype=bool)

    @property
    def has_dropout_flags(self) -> bool:
        return all(rec.dropout is not None for rec in self.subjects)


@dataclass(frozen=True)
class TestOutcome:
    """Result of one weighted one-sample log-rank test."""

    n: int
    events: int
    expected: float
    weight: float
    statistic: float
    p_two_sided: float
    p_left: float
    reject_two_sided: bool
    reject_left: bool
    reject_right: bool
    alpha: float
    policy_label: str
    weight_fallback: bool = False

    @property
    def p_right(self) -> float:
        return 1.0 - self.p_left


class RandomWeightResult(NamedTuple):
    weight: float
    used_fallback: bool


def counting_and_compensator(data: TrialDataset, null: SurvivalModel) -> tuple[int, float]:
    """Observed event count N(t) and its reference-law compensator A0(t).

    N(t) counts events; A0(t) sums the reference cumulative hazard at each
    subject's observed time on study.
    """
    n_events = int(np.count_nonzero(data.events))
    a0 = float(np.sum(null.cum_hazard(data.times_on_study)))
    return n_events, a0


def km_weight_from_arrays(
    times_on_study: np.ndarray,
    events: np.ndarray,
    null: SurvivalModel,
    fallback_weight: float | None = None,
) -> RandomWeightResult:
    """Data-driven weight from the Kaplan-Meier law of the censoring time.

    The censoring variable U = C ^ (t - Y)+ is itself right-censored by the
    event time, so its Kaplan-Meier estimator is built with reversed roles:
    a subject contributes a U-observation exactly when no event occurred.
    The weight is

        W(t) = 1 - int S_0 Lambda_0 dF_U / int F_0 dF_U

    with both integrals finite sums over the jumps of the estimator. When
    the data carry no censoring information (every subject had an event, or
    all jump mass sits where F_0 vanishes), the planning fallback weight is
    returned instead and flagged.
    """
    x = np.asarray(times_on_study, dtype=float)
    u_event = ~np.asarray(events, dtype=bool)

    order = np.argsort(x, kind="stable")
    xs = x[order]
    es = u_event[order]
    n = xs.size

    fallback = 0.5 if fallback_weight is None else float(fallback_weight)
    if not np.any(es):
        return RandomWeightResult(fallback, True)

    # Kaplan-Meier over distinct times; ties at one time share the risk set
    t_uniq, first = np.unique(xs, return_index=True)
    at_risk = n - first
    deaths = np.add.reduceat(es.astype(np.int64), first)
    frac = deaths / at_risk
    surv_after = np.cumprod(1.0 - frac)
    surv_before = np.concatenate(([1.0], surv_after[:-1]))
    jump = surv_before * frac

    keep = deaths > 0
    tj = t_uniq[keep]
    dj = jump[keep]

    lam0 = np.asarray(null.cum_hazard(tj), dtype=float)
    s0 = np.exp(-lam0)
    f0 = 1.0 - s0
    den = float(np.sum(f0 * dj))
    if den <= 0.0:
        return RandomWeightResult(fallback, True)
    num = float(np.sum(s0 * lam0 * dj))
    return RandomWeightResult(1.0 - num / den, False)


def random_weight_km(
    data: TrialDataset,
    null: SurvivalModel,
    fallback_weight: float | None = None,
) -> RandomWeightResult:
    """Data-driven Kaplan-Meier weight for a dataset; see
    :func:`km_weight_from_arrays` for the construction."""
    return km_weight_from_arrays(data.times_on_study, data.events, null, fallback_weight)


def _resolve_analysis_weight(
    data: TrialDataset,
    null: SurvivalModel,
    policy: WeightPolicy,
    design_context: CensoringModel | None,
) -> tuple[float, bool]:
    kind = policy.kind
    if kind in ("compensator", "counting", "wu", "fixed"):
        return resolve_weight(policy, null, None, design_context), False
    if kind in ("uncorrelated_null", "combined"):
        if design_context is None:
            raise PolicyError(
                f"policy {kind!r} needs the planning censoring assumptions (design_context)"
            )
        return resolve_weight(policy, null, None, design_context), False
    if kind == "random_km":
        if not data.has_dropout_flags:
            raise PolicyError("random_km needs dropout flags on every record")
        fallback = None
        if design_context is not None:
            fallback = resolve_weight(WeightPolicy.uncorrelated_null(), null, None, design_context)
        result = random_weight_km(data, null, fallback_weight=fallback)
        return result.weight, result.used_fallback
    if kind == "uncorrelated_alt":
        raise PolicyError(
            "uncorrelated_alt is resolved at design time; analyze with the resulting fixed weight"
        )
    raise PolicyError(f"unknown weight policy: {kind!r}")


def run_test(
    data: TrialDataset,
    null: SurvivalModel,
    weight_policy: WeightPolicy,
    alpha: float = 0.05,
    design_context: CensoringModel | None = None,
) -> TestOutcome:
    """Run the weighted one-sample log-rank test at two-sided level alpha.

    The two one-sided rules reject for z below the alpha/2 quantile
    (evidence of longer survival than the reference) or above the
    1 - alpha/2 quantile; the two-sided rule is their union.
    """
    if not 0.0 < alpha < 1.0:
        raise PolicyError("alpha must lie in (0, 1)")
    w, used_fallback = _resolve_analysis_weight(data, null, weight_policy, design_context)
    n_events, a0 = counting_and_compensator(data, null)
    variance = w * n_events + (1.0 - w) * a0
    if variance <= 0.0:
        raise IndeterminateTestError(
            f"variance estimate is zero (N={n_events}, A0={a0:.6g}, w={w:.6g})"
        )
    z = (n_events - a0) / math.sqrt(variance)
    p_left = float(normal_cdf(z))
    p_two = 2.0 * float(normal_cdf(-abs(z)))
    z_crit = normal_quantile(1.0 - alpha / 2.0)
    reject_left = z <= -z_crit
    reject_right = z >= z_crit
    return TestOutcome(
        n=len(data),
        events=n_events,
        expected=a0,
        weight=w,
        statistic=z,
        p_two_sided=p_two,
        p_left=p_left,
        reject_two_sided=reject_left or reject_right,
        reject_left=reject_left,
        reject_right=reject_right,
        alpha=alpha,
        policy_label=weight_policy.label,
        weight_fallback=used_fallback,
    )


class ConvergenceEntry(NamedTuple):
    n: int
    weight: float
    estimate: float
    gap: float


@dataclass(frozen=True)
class ConvergenceReport:
    """Diagnostic for the consistency of the weighted variance estimator."""

    entries: tuple[ConvergenceEntry, ...]
    limit: float
    tolerance: float

    @property
    def final_gap(self) -> float:
        return self.entries[-1].gap

    @property
    def gap_decreased(self) -> bool:
        return self.entries[-1].gap <= self.entries[0].gap

    @property
    def within_tolerance(self) -> bool:
        return self.final_gap < self.tolerance


def consistency_check_random_weight(
    datasets: Sequence[TrialDataset],
    null: SurvivalModel,
    limit: float,
    weight_policy: WeightPolicy | None = None,
    tolerance: float = 0.01,
    design_context: CensoringModel | None = None,
) -> ConvergenceReport:
    """Track (W N + (1 - W) A0) / n against its limit over growing datasets.

    Any weight sequence confined to [0, 1] leaves the estimator consistent
    for the expected event rate, so the gap must shrink as n grows; the
    default checks the data-driven Kaplan-Meier weight.
    """
    if weight_policy is None:
        weight_policy = WeightPolicy.random_km()
    entries = []
    for data in datasets:
        w, _ = _resolve_analysis_weight(data, null, weight_policy, design_context)
        n_events, a0 = counting_and_compensator(data, null)
        estimate = (w * n_events + (1.0 - w) * a0) / len(data)
        entries.append(ConvergenceEntry(len(data), w, estimate, abs(estimate - limit)))
    if not entries:
        raise DataValidationError("need at least one dataset")
    return ConvergenceReport(tuple(entries), limit, tolerance)
