"""
Correlation, single-pass accumulators and the studentized bootstrap.
"""
from dataclasses import dataclass
from typing import NamedTuple, Sequence
import logging
import math

import numpy as np

from ..errors import DegenerateStatisticError, ParameterError

logger = logging.getLogger(__name__)

# Elements drawn per bootstrap batch (resamples x sample size).
_BOOTSTRAP_BATCH_ELEMENTS = 4_000_000


class BootstrapInterval(NamedTuple):
    lo: float
    hi: float
    mean: float


def pearson_correlation(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Sample Pearson correlation, two-pass."""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape:
        raise ParameterError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < 2:
        raise DegenerateStatisticError("correlation needs at least 2 points")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateStatisticError("correlation undefined for zero variance")
    r = float(np.dot(dx, dy)) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


@dataclass
class RunningMean:
    """Welford mean/variance with an associative merge."""
    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    def update(self, value: float) -> None:
        self.count += 1
        delta = value - self.mean
        self.mean += delta / self.count
        self.m2 += delta * (value - self.mean)

    def merge(self, other: "RunningMean") -> "RunningMean":
        if other.count == 0:
            return RunningMean(self.count, self.mean, self.m2)
        if self.count == 0:
            return RunningMean(other.count, other.mean, other.m2)
        count = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * other.count / count
        m2 = self.m2 + other.m2 + delta * delta * self.count * other.count / count
        return RunningMean(count, mean, m2)

    @property
    def variance(self) -> float:
        if self.count < 2:
            raise DegenerateStatisticError("variance needs at least 2 values")
        return self.m2 / (self.count - 1)


@dataclass
class StreamingPearson:
    """Single-pass co-moment accumulator for Pearson's r."""
    count: int = 0
    mean_x: float = 0.0
    mean_y: float = 0.0
    sxx: float = 0.0
    syy: float = 0.0
    sxy: float = 0.0

    def update(self, x: float, y: float) -> None:
        self.count += 1
        dx = x - self.mean_x
        self.mean_x += dx / self.count
        dy = y - self.mean_y
        self.mean_y += dy / self.count
        self.sxx += dx * (x - self.mean_x)
        self.syy += dy * (y - self.mean_y)
        self.sxy += dx * (y - self.mean_y)

    def merge(self, other: "StreamingPearson") -> "StreamingPearson":
        if other.count == 0:
            return StreamingPearson(**vars(self))
        if self.count == 0:
            return StreamingPearson(**vars(other))
        count = self.count + other.count
        dx = other.mean_x - self.mean_x
        dy = other.mean_y - self.mean_y
        weight = self.count * other.count / count
        return StreamingPearson(
            count=count,
            mean_x=self.mean_x + dx * other.count / count,
            mean_y=self.mean_y + dy * other.count / count,
            sxx=self.sxx + other.sxx + dx * dx * weight,
            syy=self.syy + other.syy + dy * dy * weight,
            sxy=self.sxy + other.sxy + dx * dy * weight,
        )

    def correlation(self) -> float:
        if self.count < 2:
            raise DegenerateStatisticError("correlation needs at least 2 points")
        if self.sxx <= 0.0 or self.syy <= 0.0:
            raise DegenerateStatisticError("correlation undefined for zero variance")
        r = self.sxy / math.sqrt(self.sxx * self.syy)
        return min(1.0, max(-1.0, r))


def bootstrap_mean_ci(values: Sequence[float],
                      n_resamples: int = 10_000,
                      level: float = 0.95,
                      seed: int = 0) -> BootstrapInterval:
    """
    Studentized (bootstrap-t) confidence interval for the mean.

    Each resample yields t* = (mean* - mean) / se*; the interval is
    (mean - q_hi * se, mean - q_lo * se) with q the level quantiles of t*.
    """
    data = np.asarray(values, dtype=np.float64)
    if data.size == 0:
        raise ParameterError("bootstrap needs at least one value")
    if not 0.0 < level < 1.0:
        raise ParameterError(f"level must lie in (0, 1), got {level}")
    if n_resamples < 100:
        raise ParameterError(f"need at least 100 resamples, got {n_resamples}")

    size = data.size
    mean = float(data.mean())
    if size < 2 or np.all(data == data[0]):
        raise DegenerateStatisticError("bootstrap interval undefined: zero standard error")
    se = float(data.std(ddof=1)) / math.sqrt(size)

    rng = np.random.default_rng(seed)
    batch = max(1, _BOOTSTRAP_BATCH_ELEMENTS // size)
    t_stats = []
    done = 0
    while done < n_resamples:
        rows = min(batch, n_resamples - done)
        sample = data[rng.integers(0, size, size=(rows, size))]
        sample_se = sample.std(axis=1, ddof=1) / math.sqrt(size)
        keep = sample_se > 0.0
        t_stats.append((sample.mean(axis=1)[keep] - mean) / sample_se[keep])
        done += rows
    t_stats = np.concatenate(t_stats)
    if t_stats.size == 0:
        raise DegenerateStatisticError("every resample had zero spread")
    if t_stats.size < n_resamples:
        logger.warning(f"Dropped {n_resamples - t_stats.size} zero-spread bootstrap resamples")

    alpha = 1.0 - level
    q_lo, q_hi = np.quantile(t_stats, [alpha / 2.0, 1.0 - alpha / 2.0])
    return BootstrapInterval(lo=mean - float(q_hi) * se, hi=mean - float(q_lo) * se, mean=mean)
