import numpy as np
import pytest

from confmeasures.core.analysis import (
    RunningMean,
    StreamingPearson,
    bootstrap_mean_ci,
    pearson_correlation,
)
from confmeasures.core.errors import DegenerateStatisticError, ParameterError


def test_pearson_lines():
    x = [1.0, 2.0, 3.0, 4.0]
    assert pearson_correlation(x, [2 * v + 1 for v in x]) == pytest.approx(1.0)
    assert pearson_correlation(x, [-v for v in x]) == pytest.approx(-1.0)


def test_pearson_degenerate():
    with pytest.raises(DegenerateStatisticError):
        pearson_correlation([1.0], [2.0])
    with pytest.raises(DegenerateStatisticError):
        pearson_correlation([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])
    with pytest.raises(ParameterError):
        pearson_correlation([1.0, 2.0], [1.0])


def test_streaming_pearson_matches_two_pass():
    rng = np.random.default_rng(5)
    x = rng.normal(size=500)
    y = 0.7 * x + rng.normal(size=500)
    acc = StreamingPearson()
    for a, b in zip(x, y):
        acc.update(float(a), float(b))
    assert acc.correlation() == pytest.approx(pearson_correlation(x, y), abs=1e-12)

    left, right = StreamingPearson(), StreamingPearson()
    for a, b in zip(x[:200], y[:200]):
        left.update(float(a), float(b))
    for a, b in zip(x[200:], y[200:]):
        right.update(float(a), float(b))
    assert left.merge(right).correlation() == pytest.approx(acc.correlation(), abs=1e-12)
    assert StreamingPearson().merge(acc).count == 500


def test_streaming_pearson_degenerate():
    acc = StreamingPearson()
    acc.update(1.0, 1.0)
    with pytest.raises(DegenerateStatisticError):
        acc.correlation()


def test_running_mean():
    values = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0]
    acc = RunningMean()
    for v in values:
        acc.update(v)
    assert acc.mean == pytest.approx(np.mean(values))
    assert acc.variance == pytest.approx(np.var(values, ddof=1))

    left, right = RunningMean(), RunningMean()
    for v in values[:3]:
        left.update(v)
    for v in values[3:]:
        right.update(v)
    merged = left.merge(right)
    assert merged.count == len(values)
    assert merged.mean == pytest.approx(acc.mean)
    assert merged.variance == pytest.approx(acc.variance)
    with pytest.raises(DegenerateStatisticError):
        _ = RunningMean().variance


def test_bootstrap_interval():
    data = np.random.default_rng(1).normal(loc=1.0, scale=0.1, size=400)
    first = bootstrap_mean_ci(data, n_resamples=1000, seed=9)
    assert first == bootstrap_mean_ci(data, n_resamples=1000, seed=9)
    assert first.lo < first.mean < first.hi
    assert first.mean == pytest.approx(float(data.mean()))
    assert first.hi - first.lo < 0.05


def test_bootstrap_errors():
    with pytest.raises(ParameterError):
        bootstrap_mean_ci([], n_resamples=1000)
    with pytest.raises(ParameterError):
        bootstrap_mean_ci([1.0, 2.0], level=1.5)
    with pytest.raises(ParameterError):
        bootstrap_mean_ci([1.0, 2.0], n_resamples=50)
    with pytest.raises(DegenerateStatisticError):
        bootstrap_mean_ci([2.0, 2.0, 2.0], n_resamples=1000)
    with pytest.raises(DegenerateStatisticError):
        bootstrap_mean_ci([2.0], n_resamples=1000)


def test_pearson_unchanged_by_positive_affine_maps():
    rng = np.random.default_rng(13)
    x = rng.normal(size=300)
    y = x + rng.normal(scale=0.5, size=300)
    r = pearson_correlation(x, y)
    assert pearson_correlation(3.0 * x + 2.0, y) == pytest.approx(r, abs=1e-12)
    assert pearson_correlation(x, 0.25 * y - 7.0) == pytest.approx(r, abs=1e-12)


def test_bootstrap_interval_straddles_zero_for_symmetric_values():
    half = np.random.default_rng(17).uniform(0.1, 2.0, size=150)
    interval = bootstrap_mean_ci(np.concatenate([half, -half]), n_resamples=2000, seed=4)
    assert interval.mean == pytest.approx(0.0, abs=1e-12)
    assert interval.lo < 0.0 < interval.hi
