import random

import numpy as np
import pytest

from confmeasures.core import metrics
from confmeasures.core.analysis import (
    count_fixed_row_sums,
    degrees,
    enumerate_fixed_row_sums,
    sampled_degrees,
    weak_compositions,
)
from confmeasures.core.errors import ParameterError, TooFewClassesError, ZeroTotalError


def test_weak_compositions():
    parts = list(weak_compositions(2, 3))
    assert parts == [(0, 0, 2), (0, 1, 1), (0, 2, 0), (1, 0, 1), (1, 1, 0), (2, 0, 0)]
    assert list(weak_compositions(0, 2)) == [(0, 0)]


def test_count_and_enumerate_example():
    assert count_fixed_row_sums([2, 4, 3]) == 900
    matrices = list(enumerate_fixed_row_sums([2, 4, 3]))
    assert len(matrices) == 900
    assert len(set(matrices)) == 900
    assert all(m.marginals.row_sums == (2, 4, 3) for m in matrices)


def test_enumeration_counts_randomized():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(2, 3)
        rows = [rng.randint(0, 3) for _ in range(n)]
        if sum(rows) == 0:
            rows[0] = 1
        expected = count_fixed_row_sums(rows)
        assert sum(1 for _ in enumerate_fixed_row_sums(rows)) == expected


@pytest.mark.parametrize("rows, error", [
    ([3], TooFewClassesError),
    ([-1, 2], ParameterError),
    ([0, 0], ZeroTotalError),
])
def test_enumeration_errors(rows, error):
    with pytest.raises(error):
        count_fixed_row_sums(rows)


def test_degrees_hand_counts():
    result = degrees([1, 2, 3], [1, 1, 2])
    assert (result.p_count, result.q_count, result.r_count, result.s_count) == (1, 0, 2, 0)
    assert result.discriminancy is None
    assert result.consistency == 1.0
    assert result.n_pairs == 3


def test_degrees_opposed():
    result = degrees([1, 1, 2], [3, 2, 1])
    assert (result.p_count, result.q_count, result.r_count, result.s_count) == (0, 1, 0, 2)
    assert result.discriminancy == 0.0
    assert result.consistency == 0.0


def test_tie_tolerance():
    assert degrees([0.0, 1e-13], [0.0, 1.0]).q_count == 1
    assert degrees([0.0, 1e-13], [0.0, 1.0], tie_tolerance=0.0).r_count == 1


def test_degrees_same_for_any_job_count():
    rng = np.random.default_rng(3)
    f = rng.integers(0, 6, size=300).astype(float)
    g = rng.integers(0, 6, size=300).astype(float)
    single = degrees(f, g, jobs=1)
    assert degrees(f, g, jobs=4) == single
    assert degrees(f, g, jobs=1000) == single
    both_tied = single.n_pairs - (single.p_count + single.q_count + single.r_count + single.s_count)
    assert both_tied >= 0


def test_degrees_input_errors():
    with pytest.raises(ParameterError):
        degrees([1, 2], [1])
    with pytest.raises(ParameterError):
        degrees([], [])
    with pytest.raises(ParameterError):
        degrees([1, 2], [1, 2], tie_tolerance=-1.0)


def test_sampled_degrees():
    f = np.arange(100, dtype=float)
    first = sampled_degrees(f, 2 * f, n_pairs=5000, seed=11)
    assert first == sampled_degrees(f, 2 * f, n_pairs=5000, seed=11)
    assert first.sampled
    assert first.r_count == 5000
    assert first.consistency == 1.0
    with pytest.raises(ParameterError):
        sampled_degrees([1.0], [1.0], n_pairs=10, seed=0)
    with pytest.raises(ParameterError):
        sampled_degrees(f, f, n_pairs=0, seed=0)


def test_result_to_dict():
    data = degrees([1, 2, 3], [1, 1, 2]).to_dict()
    assert data["consistency"] == 1.0
    assert data["discriminancy"] is None
    assert data["sampled"] is False


def _cen_over_mcc(rows):
    matrices = list(enumerate_fixed_row_sums(rows))
    cen = [-metrics.cen(m) for m in matrices]
    mcc = [metrics.mcc(m) for m in matrices]
    return degrees(cen, mcc, tie_tolerance=1e-12)


def test_cen_discriminates_mcc_on_small_domain():
    result = _cen_over_mcc([2, 4, 3])
    assert result.n_pairs == 900 * 899 // 2
    assert (result.p_count, result.q_count, result.r_count, result.s_count) == (3178, 591, 314818, 85807)
    assert result.discriminancy == pytest.approx(3178 / 591)
    assert 4.0 <= result.discriminancy <= 9.0
    assert _cen_over_mcc([2, 4, 3]) == result


def test_two_by_two_unit_rows():
    result = _cen_over_mcc([1, 1])
    assert (result.p_count, result.q_count, result.r_count, result.s_count) == (0, 0, 5, 0)


def test_swapping_measures_exchanges_p_and_q():
    rng = np.random.default_rng(21)
    f = rng.integers(0, 5, size=200).astype(float)
    g = rng.integers(0, 5, size=200).astype(float)
    forward = degrees(f, g)
    backward = degrees(g, f)
    assert (backward.p_count, backward.q_count) == (forward.q_count, forward.p_count)
    assert (backward.r_count, backward.s_count) == (forward.r_count, forward.s_count)
    assert backward.consistency == forward.consistency
