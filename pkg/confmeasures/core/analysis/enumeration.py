"""
Exhaustive enumeration of confusion matrices with fixed row sums.
"""
from itertools import product
from typing import Iterator, List, Sequence, Tuple
import logging
import math

from ..errors import ParameterError, TooFewClassesError, ZeroTotalError
from ..matrix import ConfusionMatrix

logger = logging.getLogger(__name__)


def _check_row_sums(row_sums: Sequence[int]) -> None:
    if len(row_sums) < 2:
        raise TooFewClassesError(f"need at least 2 classes, got {len(row_sums)} row sums")
    if any(k < 0 for k in row_sums):
        raise ParameterError(f"row sums must be nonnegative: {tuple(row_sums)}")
    if sum(row_sums) < 1:
        raise ZeroTotalError("row sums must add up to at least 1")


def weak_compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """All ordered ways of writing `total` as `parts` nonnegative integers."""
    def helper(remaining: int, depth: int, current: List[int]):
        if depth == 1:
            yield tuple(current + [remaining])
        else:
            for i in range(remaining + 1):
                yield from helper(remaining - i, depth - 1, current + [i])
    yield from helper(total, parts, [])


def count_fixed_row_sums(row_sums: Sequence[int]) -> int:
    """Number of matrices with the given row sums: prod C(k + N - 1, N - 1)."""
    _check_row_sums(row_sums)
    n = len(row_sums)
    return math.prod(math.comb(k + n - 1, n - 1) for k in row_sums)


def enumerate_fixed_row_sums(row_sums: Sequence[int]) -> Iterator[ConfusionMatrix]:
    """Every N x N matrix whose row i sums to row_sums[i], each exactly once."""
    _check_row_sums(row_sums)
    n = len(row_sums)
    logger.debug(f"Enumerating {count_fixed_row_sums(row_sums)} matrices for rows {tuple(row_sums)}")
    per_row = [list(weak_compositions(k, n)) for k in row_sums]
    for rows in product(*per_row):
        yield ConfusionMatrix(rows)
