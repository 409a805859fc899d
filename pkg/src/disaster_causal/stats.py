"""Run aggregation and paired t-tests.

The t distribution tail comes from the regularized incomplete beta function,
evaluated with the modified Lentz continued fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import AllRefused, LengthMismatch, TooFewSamples
from .metrics import METRICS, MetricReport

ALPHA = 0.05

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 500


def _betacf(a: float, b: float, x: float) -> float:
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and 0 <= x <= 1."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    # the continued fraction converges fast only on this side of the mean
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_two_sided_p(t: float, df: int) -> float:
    if math.isnan(t):
        return float("nan")
    if math.isinf(t):
        return 0.0
    return min(1.0, regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t)))


@dataclass(frozen=True)
class SignificanceResult:
    metric: str
    t_statistic: float
    degrees_of_freedom: int
    p_value: float
    significant: bool
    mean_difference: float = 0.0


def paired_t_test(a: Sequence[float], b: Sequence[float], metric: str = "") -> SignificanceResult:
    """Two-sided paired t-test on the run-wise differences a[i] - b[i]."""
    if len(a) != len(b):
        raise LengthMismatch(len(a), len(b))
    n = len(a)
    if n < 2:
        raise TooFewSamples(n)
    diffs = [float(x) - float(y) for x, y in zip(a, b)]
    mean = math.fsum(diffs) / n
    var = math.fsum((d - mean) ** 2 for d in diffs) / (n - 1)
    df = n - 1
    if var == 0.0:
        # constant differences: no spread, so the test is degenerate
        if mean == 0.0:
            return SignificanceResult(metric, 0.0, df, 1.0, False, 0.0)
        t = math.copysign(math.inf, mean)
    else:
        t = mean / math.sqrt(var / n)
    p = t_two_sided_p(t, df)
    return SignificanceResult(metric, t, df, p, p < ALPHA, mean)


@dataclass(frozen=True)
class RunSeries:
    condition_label: str
    reports: tuple[MetricReport, ...]

    def __post_init__(self) -> None:
        if not self.reports:
            raise ValueError(f"series {self.condition_label!r} has no reports")

    @property
    def all_refused(self) -> bool:
        return all(r.refused for r in self.reports)

    @property
    def refused_runs(self) -> int:
        return sum(r.refused for r in self.reports)

    def values(self, metric: str) -> list[float | None]:
        return [r.value(metric) for r in self.reports]


@dataclass(frozen=True)
class Aggregate:
    mean: float
    std: float
    n: int


@dataclass(frozen=True)
class SeriesAggregate:
    condition_label: str
    runs: int
    refused_runs: int
    metrics: Mapping[str, Aggregate] = field(default_factory=dict)


def mean_std(values: Sequence[float], ddof: int = 0) -> tuple[float, float]:
    n = len(values)
    mean = math.fsum(values) / n
    if n - ddof <= 0:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in values) / (n - ddof)
    return mean, math.sqrt(var)


def aggregate_runs(series: RunSeries, ddof: int = 0) -> dict[str, Aggregate]:
    """Mean and standard deviation per metric over the scored runs.

    ``ddof=0`` gives the population convention, ``ddof=1`` the sample one.
    Refused runs carry no numbers and are left out; a series with nothing
    but refusals raises :class:`AllRefused`.
    """
    scored = [r for r in series.reports if not r.refused]
    if not scored:
        raise AllRefused(series.condition_label)
    out = {}
    for metric in METRICS:
        values = [r.value(metric) for r in scored]
        mean, std = mean_std(values, ddof)
        out[metric] = Aggregate(mean, std, len(values))
    return out


def summarize(series: RunSeries, ddof: int = 0) -> SeriesAggregate:
    metrics = {} if series.all_refused else aggregate_runs(series, ddof)
    return SeriesAggregate(series.condition_label, len(series.reports), series.refused_runs, metrics)
