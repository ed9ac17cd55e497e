"""Monte Carlo engine for operating characteristics.

Replications are partitioned into fixed-size blocks; block ``b`` draws all
of its randomness from the counter-based stream keyed by
``(master_seed, b)``, and aggregation is plain integer counting. Both
choices are what make a run's results bit-identical no matter how the
blocks are distributed over worker processes.

Within one replication every weight policy sees the same dataset (common
random numbers), so policies differ only through the variance denominator
of the standardized statistic.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass, replace
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .analysis import km_weight_from_arrays
from .design import (
    DesignSpec,
    WeightPolicy,
    resolve_weight,
    sample_size,
    weight_uncorrelated_null,
)
from .errors import DomainError
from .models import (
    CensoringModel,
    DropoutModel,
    NoDropout,
    SurvivalModel,
    UniformAccrual,
    Weibull,
    hazard_ratio_alternative,
)
from .numerics import normal_quantile, substream

__all__ = [
    "ScenarioSpec",
    "PolicyOutcome",
    "SimulationReport",
    "SweepCell",
    "TableCell",
    "TrialArrays",
    "draw_trial",
    "run_scenario",
    "weight_sweep",
    "scenario_table",
]

# subjects simulated per block; the cap keeps per-block arrays cache-friendly
_BLOCK_ELEMENTS = 1 << 21
_MAX_BLOCK_REPS = 8192


def _block_reps(n: int) -> int:
    return max(1, min(_MAX_BLOCK_REPS, _BLOCK_ELEMENTS // max(n, 1)))


class TrialArrays(NamedTuple):
    """Row-per-replication subject arrays, all with shape (reps, n)."""

    entry: np.ndarray
    time_on_study: np.ndarray
    event: np.ndarray
    dropout: np.ndarray


def draw_trial(
    truth: SurvivalModel,
    censoring: CensoringModel,
    rng: np.random.Generator,
    reps: int,
    n: int,
) -> TrialArrays:
    """Sample ``reps`` independent trials of ``n`` subjects each.

    The draw order (entries, then event times, then dropout) is part of the
    reproducibility contract: it fixes how a stream's values map to
    subjects.
    """
    shape = (reps, n)
    entry = censoring.accrual.sample(rng, shape)
    event_time = truth.inverse_cum_hazard(rng.standard_exponential(shape))
    dropout_time = censoring.dropout.sample(rng, shape)
    horizon = np.clip(censoring.analysis_time - entry, 0.0, None)
    censor_time = np.minimum(dropout_time, horizon)
    observed = np.minimum(event_time, censor_time)
    event = event_time <= censor_time
    dropout = ~event & (dropout_time < horizon)
    return TrialArrays(entry, observed, event, dropout)


@dataclass(frozen=True)
class ScenarioSpec:
    """One simulated scenario: a data-generating truth, a reference law to
    test against, the censoring environment, and the policies to compare on
    shared datasets."""

    truth_model: SurvivalModel
    null_model: SurvivalModel
    censoring: CensoringModel
    n: int
    policies: tuple[WeightPolicy, ...]
    replications: int
    master_seed: int
    alpha: float = 0.05
    planning_alternative: SurvivalModel | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError("scenario needs at least one subject")
        if self.replications < 1:
            raise DomainError("scenario needs at least one replication")
        if not self.policies:
            raise DomainError("scenario needs at least one weight policy")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError("alpha must lie in (0, 1)")
        if self.master_seed < 0:
            raise DomainError("master seed must be non-negative")


@dataclass(frozen=True)
class PolicyOutcome:
    """Tallied rejections for one weight policy."""

    label: str
    kind: str
    weight: float | None
    replications: int
    determinate: int
    indeterminate: int
    fallbacks: int
    rejections_two: int
    rejections_left: int
    rejections_right: int
    rate_two: float
    rate_left: float
    rate_right: float
    se_two: float
    se_left: float
    se_right: float


@dataclass(frozen=True)
class SimulationReport:
    """Per-policy operating characteristics of one scenario."""

    n: int
    replications: int
    master_seed: int
    alpha: float
    policies: tuple[PolicyOutcome, ...]

    def by_label(self, label: str) -> PolicyOutcome:
        for pol in self.policies:
            if pol.label == label:
                return pol
        raise KeyError(label)


def _resolve_scenario_weights(spec: ScenarioSpec) -> list[float | None]:
    """Numeric weight per policy; None marks the data-driven policy."""
    weights: list[float | None] = []
    for policy in spec.policies:
        if policy.kind == "random_km":
            weights.append(None)
        else:
            weights.append(
                resolve_weight(
                    policy, spec.null_model, spec.planning_alternative, spec.censoring
                )
            )
    return weights


# counter slots per policy
_K_TWO, _K_LEFT, _K_RIGHT, _K_IND, _K_FB = range(5)


def _run_blocks(spec: ScenarioSpec, block_indices: Iterable[int]) -> np.ndarray:
    """Tally one set of blocks; returns an int64 array (policies, 5)."""
    weights = _resolve_scenario_weights(spec)
    needs_km = any(w is None for w in weights)
    km_fallback = (
        weight_uncorrelated_null(spec.null_model, spec.censoring) if needs_km else None
    )
    z_crit = normal_quantile(1.0 - spec.alpha / 2.0)
    reps_per_block = _block_reps(spec.n)
    counters = np.zeros((len(weights), 5), dtype=np.int64)

    for b in block_indices:
        reps_here = min(reps_per_block, spec.replications - b * reps_per_block)
        if reps_here <= 0:
            continue
        rng = substream(spec.master_seed, b)
        arrays = draw_trial(spec.truth_model, spec.censoring, rng, reps_here, spec.n)
        n_events = arrays.event.sum(axis=1)
        a0 = np.asarray(spec.null_model.cum_hazard(arrays.time_on_study)).sum(axis=1)
        diff = n_events - a0

        for j, w in enumerate(weights):
            if w is None:
                rep_weights = np.empty(reps_here)
                for i in range(reps_here):
                    result = km_weight_from_arrays(
                        arrays.time_on_study[i], arrays.event[i], spec.null_model, km_fallback
                    )
                    rep_weights[i] = result.weight
                    counters[j, _K_FB] += result.used_fallback
                variance = rep_weights * n_events + (1.0 - rep_weights) * a0
            else:
                variance = w * n_events + (1.0 - w) * a0
            ok = variance > 0.0
            z = diff[ok] / np.sqrt(variance[ok])
            left = z <= -z_crit
            right = z >= z_crit
            counters[j, _K_TWO] += int(np.count_nonzero(left | right))
            counters[j, _K_LEFT] += int(np.count_nonzero(left))
            counters[j, _K_RIGHT] += int(np.count_nonzero(right))
            counters[j, _K_IND] += int(reps_here - np.count_nonzero(ok))
    return counters


def _rate_and_se(count: int, determinate: int) -> tuple[float, float]:
    if determinate <= 0:
        return math.nan, math.nan
    rate = count / determinate
    return rate, math.sqrt(rate * (1.0 - rate) / determinate)


def _partition(n_blocks: int, workers: int) -> list[range]:
    return [range(k, n_blocks, workers) for k in range(workers)]


def run_scenario(spec: ScenarioSpec, workers: int = 1) -> SimulationReport:
    """Simulate one scenario and tally each policy's rejection rates.

    The report is a deterministic function of ``spec`` alone: the worker
    count only changes which process handles which block.
    """
    n_blocks = math.ceil(spec.replications / _block_reps(spec.n))
    if workers <= 1 or n_blocks <= 1:
        counters = _run_blocks(spec, range(n_blocks))
    else:
        parts = _partition(n_blocks, min(workers, n_blocks))
        with multiprocessing.Pool(len(parts)) as pool:
            results = pool.starmap(_run_blocks, [(spec, part) for part in parts])
        counters = np.sum(results, axis=0)

    weights = _resolve_scenario_weights(spec)
    outcomes = []
    for policy, w, row in zip(spec.policies, weights, counters):
        determinate = spec.replications - int(row[_K_IND])
        rate_two, se_two = _rate_and_se(int(row[_K_TWO]), determinate)
        rate_left, se_left = _rate_and_se(int(row[_K_LEFT]), determinate)
        rate_right, se_right = _rate_and_se(int(row[_K_RIGHT]), determinate)
        outcomes.append(
            PolicyOutcome(
                label=policy.label,
                kind=policy.kind,
                weight=w,
                replications=spec.replications,
                determinate=determinate,
                indeterminate=int(row[_K_IND]),
                fallbacks=int(row[_K_FB]),
                rejections_two=int(row[_K_TWO]),
                rejections_left=int(row[_K_LEFT]),
                rejections_right=int(row[_K_RIGHT]),
                rate_two=rate_two,
                rate_left=rate_left,
                rate_right=rate_right,
                se_two=se_two,
                se_left=se_left,
                se_right=se_right,
            )
        )
    return SimulationReport(
        n=spec.n,
        replications=spec.replications,
        master_seed=spec.master_seed,
        alpha=spec.alpha,
        policies=tuple(outcomes),
    )


class SweepCell(NamedTuple):
    """Empirical left-tail rejection rate for one (sample size, weight) pair."""

    n: int
    weight: float
    replications: int
    determinate: int
    indeterminate: int
    rejections_left: int
    rate_left: float
    se_left: float


def _sweep_blocks(
    base: ScenarioSpec,
    n: int,
    n_index: int,
    weights: np.ndarray,
    block_indices: Iterable[int],
) -> np.ndarray:
    """Left-rejection and indeterminate tallies, shape (len(weights), 2)."""
    z_crit = normal_quantile(1.0 - base.alpha / 2.0)
    reps_per_block = _block_reps(n)
    counters = np.zeros((weights.size, 2), dtype=np.int64)
    w_col = weights[:, None]
    for b in block_indices:
        reps_here = min(reps_per_block, base.replications - b * reps_per_block)
        if reps_here <= 0:
            continue
        # distinct sample sizes use disjoint stream indices under one seed
        rng = substream(base.master_seed, (n_index << 32) | b)
        arrays = draw_trial(base.truth_model, base.censoring, rng, reps_here, n)
        n_events = arrays.event.sum(axis=1)
        a0 = np.asarray(base.null_model.cum_hazard(arrays.time_on_study)).sum(axis=1)
        diff = n_events - a0
        variance = w_col * n_events[None, :] + (1.0 - w_col) * a0[None, :]
        ok = variance > 0.0
        with np.errstate(invalid="ignore", divide="ignore"):
            z = np.where(ok, diff[None, :] / np.sqrt(variance), 0.0)
        counters[:, 0] += np.count_nonzero((z <= -z_crit) & ok, axis=1)
        counters[:, 1] += np.count_nonzero(~ok, axis=1)
    return counters


def weight_sweep(
    base: ScenarioSpec,
    weights: Sequence[float],
    sample_sizes: Sequence[int],
    workers: int = 1,
) -> tuple[SweepCell, ...]:
    """Empirical left-tail error over a (weight, sample size) grid.

    All weights at one sample size share the same simulated datasets, so a
    cell differs from its neighbors only through the variance denominator;
    ``base.n`` and ``base.policies`` are ignored in favor of the grid.
    """
    w_arr = np.asarray(list(weights), dtype=float)
    if w_arr.size == 0 or np.any((w_arr < 0.0) | (w_arr > 1.0)):
        raise DomainError("sweep weights must lie in [0, 1]")
    cells: list[SweepCell] = []
    for n_index, n in enumerate(sample_sizes):
        if n < 1:
            raise DomainError("sample sizes must be positive")
        n_blocks = math.ceil(base.replications / _block_reps(n))
        if workers <= 1 or n_blocks <= 1:
            counters = _sweep_blocks(base, n, n_index, w_arr, range(n_blocks))
        else:
            parts = _partition(n_blocks, min(workers, n_blocks))
            with multiprocessing.Pool(len(parts)) as pool:
                results = pool.starmap(
                    _sweep_blocks, [(base, n, n_index, w_arr, part) for part in parts]
                )
            counters = np.sum(results, axis=0)
        for w, (k_left, k_ind) in zip(w_arr, counters):
            determinate = base.replications - int(k_ind)
            rate, se = _rate_and_se(int(k_left), determinate)
            cells.append(
                SweepCell(
                    n=int(n),
                    weight=float(w),
                    replications=base.replications,
                    determinate=determinate,
                    indeterminate=int(k_ind),
                    rejections_left=int(k_left),
                    rate_left=rate,
                    se_left=se,
                )
            )
    return tuple(cells)


@dataclass(frozen=True)
class TableCell:
    """Design and empirical operating characteristics for one scenario/policy."""

    shape: float
    median: float
    hazard_ratio: float
    policy_label: str
    n: int
    weight: float
    alpha_left: float
    alpha_left_se: float
    indeterminate_null: int
    best_alpha: bool
    power: float | None = None
    power_se: float | None = None
    indeterminate_alt: int | None = None


def scenario_table(
    shapes: Sequence[float],
    medians: Sequence[float],
    hazard_ratios: Sequence[float],
    policies: Sequence[WeightPolicy],
    *,
    accrual_length: float = 3.0,
    follow_up: float = 1.0,
    dropout: DropoutModel = NoDropout(),
    alpha: float = 0.05,
    beta: float = 0.2,
    replications: int = 100_000,
    master_seed: int = 0,
    include_power: bool = True,
    workers: int = 1,
) -> tuple[TableCell, ...]:
    """Design each grid cell per policy, then estimate its error and power.

    Every policy is simulated at its own designed sample size, under the
    reference law for the type I error and under the alternative for power.
    The cell's policy with the left-tail error closest to the nominal
    alpha/2 is flagged ``best_alpha``.
    """
    censoring = CensoringModel(UniformAccrual(accrual_length), dropout, accrual_length + follow_up)
    cells: list[TableCell] = []
    run_index = 0
    for shape in shapes:
        for median in medians:
            for delta in hazard_ratios:
                null = Weibull(shape, median)
                alternative = hazard_ratio_alternative(null, delta)
                cell_rows: list[TableCell] = []
                for policy in policies:
                    design = sample_size(
                        DesignSpec(
                            null_model=null,
                            follow_up=follow_up,
                            weight_policy=policy,
                            hazard_ratio=delta,
                            accrual_length=accrual_length,
                            dropout=dropout,
                            alpha=alpha,
                            beta=beta,
                        )
                    )
                    null_report = run_scenario(
                        ScenarioSpec(
                            truth_model=null,
                            null_model=null,
                            censoring=censoring,
                            n=design.n,
                            policies=(policy,),
                            replications=replications,
                            master_seed=master_seed + run_index,
                            alpha=alpha,
                            planning_alternative=alternative,
                        ),
                        workers=workers,
                    )
                    run_index += 1
                    outcome = null_report.policies[0]
                    power_rate = power_se = None
                    indeterminate_alt = None
                    if include_power:
                        alt_report = run_scenario(
                            ScenarioSpec(
                                truth_model=alternative,
                                null_model=null,
                                censoring=censoring,
                                n=design.n,
                                policies=(policy,),
                                replications=replications,
                                master_seed=master_seed + run_index,
                                alpha=alpha,
                                planning_alternative=alternative,
                            ),
                            workers=workers,
                        )
                        run_index += 1
                        alt_outcome = alt_report.policies[0]
                        power_rate = alt_outcome.rate_left
                        power_se = alt_outcome.se_left
                        indeterminate_alt = alt_outcome.indeterminate
                    cell_rows.append(
                        TableCell(
                            shape=shape,
                            median=median,
                            hazard_ratio=delta,
                            policy_label=policy.label,
                            n=design.n,
                            weight=design.weight_used,
                            alpha_left=outcome.rate_left,
                            alpha_left_se=outcome.se_left,
                            indeterminate_null=outcome.indeterminate,
                            best_alpha=False,
                            power=power_rate,
                            power_se=power_se,
                            indeterminate_alt=indeterminate_alt,
                        )
                    )
                nominal = alpha / 2.0
                best = min(range(len(cell_rows)), key=lambda i: abs(cell_rows[i].alpha_left - nominal))
                for i, row in enumerate(cell_rows):
                    cells.append(replace(row, best_alpha=(i == best)))
    return tuple(cells)
