"""Parametric survival, accrual, and dropout laws.

Every survival law is specified through its cumulative hazard and the
inverse of that function, from which survival, density, quantile, and
inverse-transform sampling all follow. The censoring composite
``S_U(s) = S_C(s) * F_Y((t - s)+)`` combines staggered entry with dropout
for a trial analyzed at calendar time ``t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError

LOG_TWO = math.log(2.0)

__all__ = [
    "SurvivalModel",
    "Weibull",
    "Exponential",
    "PiecewiseExponential",
    "AccrualModel",
    "UniformAccrual",
    "PowerAccrual",
    "DropoutModel",
    "NoDropout",
    "ExponentialDropout",
    "dropout_from_yearly_rate",
    "CensoringModel",
    "hazard_ratio_alternative",
    "s_u",
    "sample_event_time",
    "sample_entry",
    "sample_dropout",
]


def _match(reference, values):
    """Return ``values`` as a float when ``reference`` was scalar input."""
    arr = np.asarray(values)
    if np.ndim(reference) == 0:
        return float(arr)
    return arr


class SurvivalModel:
    """Base class: families implement the cumulative hazard and its inverse."""

    def cum_hazard(self, s):
        raise NotImplementedError

    def inverse_cum_hazard(self, u):
        raise NotImplementedError

    def hazard(self, s):
        raise NotImplementedError

    def survival(self, s):
        return _match(s, np.exp(-np.asarray(self.cum_hazard(s))))

    def cdf(self, s):
        return _match(s, -np.expm1(-np.asarray(self.cum_hazard(s))))

    def density(self, s):
        return _match(s, np.asarray(self.hazard(s)) * np.asarray(self.survival(s)))

    def quantile(self, p):
        arr = np.asarray(p, dtype=float)
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise DomainError("quantile requires probabilities in [0, 1]")
        return _match(p, self.inverse_cum_hazard(-np.log1p(-arr)))

    def sample(self, rng: np.random.Generator, size=None):
        return self.inverse_cum_hazard(rng.standard_exponential(size))


@dataclass(frozen=True)
class Weibull(SurvivalModel):
    """Weibull law parametrized by shape and median: Lambda(s) = log(2) (s/m)^k."""

    shape: float
    median: float

    def __post_init__(self) -> None:
        if not (self.shape > 0.0 and self.median > 0.0):
            raise DomainError("Weibull shape and median must be positive")

    def cum_hazard(self, s):
        scaled = np.clip(np.asarray(s, dtype=float), 0.0, None) / self.median
        return _match(s, LOG_TWO * scaled**self.shape)

    def inverse_cum_hazard(self, u):
        scaled = np.clip(np.asarray(u, dtype=float), 0.0, None) / LOG_TWO
        return _match(u, self.median * scaled ** (1.0 / self.shape))

    def hazard(self, s):
        scaled = np.clip(np.asarray(s, dtype=float), 0.0, None) / self.median
        with np.errstate(divide="ignore"):
            out = (LOG_TWO * self.shape / self.median) * scaled ** (self.shape - 1.0)
        return _match(s, out)


@dataclass(frozen=True)
class Exponential(SurvivalModel):
    """Constant-hazard law: Lambda(s) = rate * s."""

    rate: float

    def __post_init__(self) -> None:
        if not self.rate > 0.0:
            raise DomainError("exponential rate must be positive")

    @classmethod
    def from_median(cls, median: float) -> "Exponential":
        if not median > 0.0:
            raise DomainError("median must be positive")
        return cls(LOG_TWO / median)

    @property
    def median(self) -> float:
        return LOG_TWO / self.rate

    def cum_hazard(self, s):
        return _match(s, self.rate * np.clip(np.asarray(s, dtype=float), 0.0, None))

    def inverse_cum_hazard(self, u):
        return _match(u, np.clip(np.asarray(u, dtype=float), 0.0, None) / self.rate)

    def hazard(self, s):
        return _match(s, np.full_like(np.asarray(s, dtype=float), self.rate))


@dataclass(frozen=True)
class PiecewiseExponential(SurvivalModel):
    """Piecewise-constant hazard; ``rates[i]`` applies on the i-th segment.

    ``breakpoints`` are the strictly increasing interior segment boundaries,
    so ``len(rates) == len(breakpoints) + 1``.
    """

    breakpoints: tuple[float, ...]
    rates: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.rates) != len(self.breakpoints) + 1:
            raise DomainError("need exactly one more rate than breakpoints")
        if any(r <= 0.0 for r in self.rates):
            raise DomainError("piecewise hazard rates must be positive")
        knots = (0.0,) + tuple(self.breakpoints)
        if any(b <= a for a, b in zip(knots[:-1], knots[1:])):
            raise DomainError("breakpoints must be strictly increasing and positive")

    @cached_property
    def _knots(self) -> np.ndarray:
        return np.array((0.0,) + tuple(self.breakpoints))

    @cached_property
    def _rates(self) -> np.ndarray:
        return np.array(self.rates)

    @cached_property
    def _cum_at_knots(self) -> np.ndarray:
        widths = np.diff(self._knots)
        return np.concatenate(([0.0], np.cumsum(self._rates[:-1] * widths)))

    def _segment(self, s: np.ndarray) -> np.ndarray:
        return np.clip(np.searchsorted(self._knots, s, side="right") - 1, 0, len(self.rates) - 1)

    def cum_hazard(self, s):
        arr = np.clip(np.asarray(s, dtype=float), 0.0, None)
        i = self._segment(arr)
        return _match(s, self._cum_at_knots[i] + self._rates[i] * (arr - self._knots[i]))

    def inverse_cum_hazard(self, u):
        arr = np.clip(np.asarray(u, dtype=float), 0.0, None)
        i = np.clip(np.searchsorted(self._cum_at_knots, arr, side="right") - 1, 0, len(self.rates) - 1)
        return _match(u, self._knots[i] + (arr - self._cum_at_knots[i]) / self._rates[i])

    def hazard(self, s):
        arr = np.clip(np.asarray(s, dtype=float), 0.0, None)
        return _match(s, self._rates[self._segment(arr)])


def hazard_ratio_alternative(null: SurvivalModel, delta: float) -> SurvivalModel:
    """Alternative law with cumulative hazard ``Lambda_null / delta``.

    ``delta > 1`` means longer survival than the reference. Within each
    supported family the transformed law stays in the family; for the
    Weibull this keeps the shape and rescales the median by
    ``delta ** (1 / shape)``.
    """
    if not (np.isfinite(delta) and delta > 0.0):
        raise DomainError("hazard ratio must be positive and finite")
    if isinstance(null, Weibull):
        return Weibull(null.shape, null.median * delta ** (1.0 / null.shape))
    if isinstance(null, Exponential):
        return Exponential(null.rate / delta)
    if isinstance(null, PiecewiseExponential):
        return PiecewiseExponential(null.breakpoints, tuple(r / delta for r in null.rates))
    raise DomainError(f"unsupported survival family: {type(null).__name__}")


class AccrualModel:
    """Base class for entry-time laws supported on [0, length]."""

    length: float

    def cdf(self, y):
        raise NotImplementedError

    def quantile(self, u):
        raise NotImplementedError

    def sample(self, rng: np.random.Generator, size=None):
        return self.quantile(rng.random(size))


@dataclass(frozen=True)
class UniformAccrual(AccrualModel):
    """Entries spread uniformly over an accrual window of the given length."""

    length: float

    def __post_init__(self) -> None:
        if not self.length > 0.0:
            raise DomainError("accrual length must be positive")

    def cdf(self, y):
        return _match(y, np.clip(np.asarray(y, dtype=float) / self.length, 0.0, 1.0))

    def quantile(self, u):
        return _match(u, self.length * np.asarray(u, dtype=float))


@dataclass(frozen=True)
class PowerAccrual(AccrualModel):
    """Entry law F_Y(y) = (y / length) ** exponent on [0, length].

    ``exponent`` below 1 front-loads recruitment, above 1 back-loads it;
    1 recovers the uniform law.
    """

    length: float
    exponent: float

    def __post_init__(self) -> None:
        if not self.length > 0.0:
            raise DomainError("accrual length must be positive")
        if not self.exponent > 0.0:
            raise DomainError("accrual exponent must be positive")

    def cdf(self, y):
        base = np.clip(np.asarray(y, dtype=float) / self.length, 0.0, 1.0)
        return _match(y, base**self.exponent)

    def quantile(self, u):
        return _match(u, self.length * np.asarray(u, dtype=float) ** (1.0 / self.exponent))


class DropoutModel:
    """Base class for censoring-by-dropout laws."""

    def survival(self, s):
        raise NotImplementedError

    def sample(self, rng: np.random.Generator, size=None):
        raise NotImplementedError


@dataclass(frozen=True)
class NoDropout(DropoutModel):
    """Every subject stays on study: S_C is identically one."""

    def survival(self, s):
        return _match(s, np.ones_like(np.asarray(s, dtype=float)))

    def sample(self, rng: np.random.Generator, size=None):
        # no randomness consumed, so stream layouts match the dropout-free case
        return np.inf if size is None else np.full(size, np.inf)


@dataclass(frozen=True)
class ExponentialDropout(DropoutModel):
    """Dropout with constant yearly hazard."""

    hazard: float

    def __post_init__(self) -> None:
        if not self.hazard > 0.0:
            raise DomainError("dropout hazard must be positive")

    @classmethod
    def from_yearly_rate(cls, rate: float) -> "ExponentialDropout":
        """Hazard implied by losing the given fraction of subjects per year."""
        if not 0.0 < rate < 1.0:
            raise DomainError("yearly dropout rate must lie in (0, 1)")
        return cls(-math.log1p(-rate))

    def survival(self, s):
        return _match(s, np.exp(-self.hazard * np.clip(np.asarray(s, dtype=float), 0.0, None)))

    def sample(self, rng: np.random.Generator, size=None):
        return rng.standard_exponential(size) / self.hazard


def dropout_from_yearly_rate(rate: float) -> DropoutModel:
    """Dropout model for a yearly loss fraction; zero maps to no dropout."""
    if rate == 0.0:
        return NoDropout()
    return ExponentialDropout.from_yearly_rate(rate)


@dataclass(frozen=True)
class CensoringModel:
    """Censoring environment of a trial analyzed at a fixed calendar time.

    A subject entering at Y is observed for at most (t - Y)+ years and may
    drop out earlier; the censoring variable is U = C ^ (t - Y)+ with
    survival function S_U(s) = S_C(s) * F_Y((t - s)+).
    """

    accrual: AccrualModel
    dropout: DropoutModel
    analysis_time: float

    def __post_init__(self) -> None:
        if not self.analysis_time > 0.0:
            raise DomainError("analysis time must be positive")

    def survival_u(self, s):
        arr = np.asarray(s, dtype=float)
        residual = np.clip(self.analysis_time - arr, 0.0, None)
        return _match(s, np.asarray(self.dropout.survival(arr)) * np.asarray(self.accrual.cdf(residual)))

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Interior kink locations of S_U, declared to the quadrature engine."""
        kink = self.analysis_time - self.accrual.length
        if 0.0 < kink < self.analysis_time:
            return (kink,)
        return ()

    def administrative_horizon(self, entry_time):
        """Maximum observable time on study for a subject entering at ``entry_time``."""
        arr = np.asarray(entry_time, dtype=float)
        return _match(entry_time, np.clip(self.analysis_time - arr, 0.0, None))


def s_u(censoring: CensoringModel, s):
    """Censoring survival function S_U(s) = S_C(s) * F_Y((t - s)+)."""
    return censoring.survival_u(s)


def sample_event_time(model: SurvivalModel, rng: np.random.Generator, size=None):
    """Draw event times by inverse transform of the cumulative hazard."""
    return model.sample(rng, size)


def sample_entry(accrual: AccrualModel, rng: np.random.Generator, size=None):
    """Draw entry times from the accrual law."""
    return accrual.sample(rng, size)


def sample_dropout(dropout: DropoutModel, rng: np.random.Generator, size=None):
    """Draw dropout times; infinite when the model has no dropout."""
    return dropout.sample(rng, size)
