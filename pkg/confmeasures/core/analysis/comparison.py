"""
Degree of consistency and degree of discriminancy between two measures.

For measures f and g over a set of objects every unordered pair (a, b) is
classified by the signs of f(a) - f(b) and g(a) - g(b), differences within the
tie tolerance counting as equal:

    P: f differs, g ties          Q: f ties, g differs
    R: both differ, same sign     S: both differ, opposite sign

discriminancy of f over g = |P| / |Q|, consistency = |R| / (|R| + |S|).
Both measures must be oriented the same way (larger = better) beforehand.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from ..errors import ParameterError

logger = logging.getLogger(__name__)

DEFAULT_TIE_TOLERANCE = 1e-12

# Pairs classified per vectorised step.
_PAIR_CHUNK = 1_000_000


@dataclass(frozen=True)
class ComparisonResult:
    """Pair counts and the derived degrees."""
    p_count: int
    q_count: int
    r_count: int
    s_count: int
    tie_tolerance: float
    n_pairs: int
    sampled: bool = False

    @property
    def discriminancy(self) -> Optional[float]:
        """|P|/|Q|; None when no pair is tied by f only."""
        if self.q_count == 0:
            return None
        return self.p_count / self.q_count

    @property
    def consistency(self) -> Optional[float]:
        """|R|/(|R|+|S|); None when no pair is strictly ordered by both."""
        ordered = self.r_count + self.s_count
        if ordered == 0:
            return None
        return self.r_count / ordered

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["discriminancy"] = self.discriminancy
        data["consistency"] = self.consistency
        return data


def _classify(df: np.ndarray, dg: np.ndarray, tolerance: float) -> Tuple[int, int, int, int]:
    f_tie = np.abs(df) <= tolerance
    g_tie = np.abs(dg) <= tolerance
    both = ~f_tie & ~g_tie
    agree = np.sign(df) == np.sign(dg)
    return (
        int(np.count_nonzero(~f_tie & g_tie)),
        int(np.count_nonzero(f_tie & ~g_tie)),
        int(np.count_nonzero(both & agree)),
        int(np.count_nonzero(both & ~agree)),
    )


def _count_rows(f: np.ndarray, g: np.ndarray, start: int, stop: int,
                tolerance: float) -> Tuple[int, int, int, int]:
    """Counts for the pairs (i, j), start <= i < stop, j > i."""
    totals = [0, 0, 0, 0]
    for i in range(start, stop):
        counts = _classify(f[i] - f[i + 1:], g[i] - g[i + 1:], tolerance)
        for k in range(4):
            totals[k] += counts[k]
    return tuple(totals)


def _check_values(f_values: Sequence[float], g_values: Sequence[float],
                  tolerance: float) -> Tuple[np.ndarray, np.ndarray]:
    f = np.asarray(f_values, dtype=np.float64)
    g = np.asarray(g_values, dtype=np.float64)
    if f.shape != g.shape or f.ndim != 1:
        raise ParameterError(f"measure value sequences differ in length: {f.size} vs {g.size}")
    if f.size == 0:
        raise ParameterError("measure value sequences are empty")
    if tolerance < 0:
        raise ParameterError(f"tie tolerance must be >= 0, got {tolerance}")
    return f, g


def degrees(f_values: Sequence[float],
            g_values: Sequence[float],
            tie_tolerance: float = DEFAULT_TIE_TOLERANCE,
            jobs: int = 1) -> ComparisonResult:
    """Exact P/Q/R/S counts over all unordered pairs."""
    f, g = _check_values(f_values, g_values, tie_tolerance)
    size = f.size
    n_pairs = size * (size - 1) // 2

    jobs = max(1, jobs)
    bounds = np.linspace(0, size, num=min(jobs, size) + 1, dtype=np.int64)
    spans: List[Tuple[int, int]] = [
        (int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo
    ]
    if len(spans) <= 1:
        parts = [_count_rows(f, g, 0, size, tie_tolerance)]
    else:
        with ThreadPoolExecutor(max_workers=len(spans)) as pool:
            parts = list(pool.map(lambda span: _count_rows(f, g, span[0], span[1], tie_tolerance), spans))

    p, q, r, s = (sum(part[k] for part in parts) for k in range(4))
    logger.debug(f"Classified {n_pairs} pairs: P={p} Q={q} R={r} S={s}")
    return ComparisonResult(p, q, r, s, tie_tolerance, n_pairs)


def sampled_degrees(f_values: Sequence[float],
                    g_values: Sequence[float],
                    n_pairs: int,
                    seed: int,
                    tie_tolerance: float = DEFAULT_TIE_TOLERANCE) -> ComparisonResult:
    """P/Q/R/S counts over uniformly sampled distinct pairs (seeded)."""
    f, g = _check_values(f_values, g_values, tie_tolerance)
    if f.size < 2:
        raise ParameterError("sampling pairs needs at least 2 objects")
    if n_pairs < 1:
        raise ParameterError(f"number of sampled pairs must be >= 1, got {n_pairs}")

    rng = np.random.default_rng(seed)
    totals = [0, 0, 0, 0]
    drawn = 0
    while drawn < n_pairs:
        size = min(_PAIR_CHUNK, n_pairs - drawn)
        i = rng.integers(0, f.size, size=size)
        # j uniform over the other objects
        j = rng.integers(0, f.size - 1, size=size)
        j = j + (j >= i)
        counts = _classify(f[i] - f[j], g[i] - g[j], tie_tolerance)
        for k in range(4):
            totals[k] += counts[k]
        drawn += size
    return ComparisonResult(*totals, tie_tolerance=tie_tolerance, n_pairs=n_pairs, sampled=True)
