"""
Scalar performance measures on confusion matrices.

ACC, multi-class MCC, Confusion Entropy (CEN), the transformed MCC (tMCC)
relating the two, the k calibration factor and the binary closed forms.
"""
from dataclasses import asdict, dataclass
from typing import Dict, Optional, Sequence
import logging
import math

import numpy as np

from .errors import ParameterError, TooFewClassesError
from .matrix import ConfusionMatrix, from_entries, from_label_pairs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MetricReport:
    """All scalar measures of one matrix; tmcc/k_cen are None when n = 2."""
    acc: float
    mcc: float
    cen: float
    tmcc: Optional[float]
    k_cen: Optional[float]
    n: int
    total: int

    def to_dict(self) -> Dict:
        return asdict(self)


def _log_base(n: int) -> float:
    """Natural log of the CEN base 2(N-1)."""
    return math.log(2 * (n - 1))


def accuracy(matrix: ConfusionMatrix) -> float:
    """Fraction of correctly classified samples."""
    return matrix.trace / matrix.total


def _mcc_from_parts(numerator: int, left: int, right: int) -> float:
    """numerator / sqrt(left * right) on exact integers of any size."""
    if left == 0 or right == 0:
        return 0.0
    # drop low bits of huge factors so float conversion cannot overflow
    left_shift = max(0, left.bit_length() - 1000)
    right_shift = max(0, right.bit_length() - 1000)
    if (left_shift + right_shift) % 2:
        left_shift += 1
    value = (numerator / (1 << ((left_shift + right_shift) // 2))) / (
        math.sqrt(left / (1 << left_shift)) * math.sqrt(right / (1 << right_shift))
    )
    return min(1.0, max(-1.0, value))


def mcc(matrix: ConfusionMatrix) -> float:
    """
    Multi-class Matthews correlation coefficient.

    Evaluated through the marginal form
    (c*s - sum p_k t_k) / sqrt(s^2 - sum p_k^2) / sqrt(s^2 - sum t_k^2)
    in exact integers; 0 when either square-root factor vanishes.
    """
    rows, cols, trace, total = matrix.marginals
    numerator = trace * total - sum(p * t for p, t in zip(cols, rows))
    left = total * total - sum(p * p for p in cols)
    right = total * total - sum(t * t for t in rows)
    return _mcc_from_parts(numerator, left, right)


def mcc_triple_sum(matrix: ConfusionMatrix) -> float:
    """Literal O(N^3) evaluation of the triple-sum MCC expression."""
    c = matrix.entries
    n = matrix.n
    numerator = 0
    for k in range(n):
        for l in range(n):
            for m in range(n):
                numerator += c[k][k] * c[m][l] - c[l][k] * c[k][m]

    left = 0
    right = 0
    for k in range(n):
        predicted_k = sum(c[l][k] for l in range(n))
        predicted_other = sum(c[g][f] for f in range(n) if f != k for g in range(n))
        left += predicted_k * predicted_other
        true_k = sum(c[k][l] for l in range(n))
        true_other = sum(c[f][g] for f in range(n) if f != k for g in range(n))
        right += true_k * true_other
    return _mcc_from_parts(numerator, left, right)


def mcc_from_labels(true_labels: Sequence[int],
                    predicted_labels: Sequence[int],
                    n: int) -> float:
    """MCC as cov(X, Y) / sqrt(cov(X, X) cov(Y, Y)) over one-hot label matrices (0-based)."""
    # same length, range and emptiness checks as the counted matrix
    from_label_pairs(true_labels, predicted_labels, n)
    x = np.eye(n)[np.asarray(predicted_labels, dtype=np.int64)]
    y = np.eye(n)[np.asarray(true_labels, dtype=np.int64)]
    x -= x.mean(axis=0)
    y -= y.mean(axis=0)
    cov_xy = float(np.sum(x * y))
    cov_xx = float(np.sum(x * x))
    cov_yy = float(np.sum(y * y))
    if cov_xx == 0.0 or cov_yy == 0.0:
        return 0.0
    return cov_xy / math.sqrt(cov_xx * cov_yy)


def cen(matrix: ConfusionMatrix) -> float:
    """
    Confusion Entropy with logarithm base 2(N-1).

    Every off-diagonal count C_ab enters twice, once normalised by the
    row+column mass of class a and once by that of class b; weighting by
    P_j collapses the sum to

        CEN = 1/(2S) * sum_{a != b, C_ab > 0} C_ab (log(d_a/C_ab) + log(d_b/C_ab))

    with d_j = sum_k C_jk + C_kj. Zero probabilities contribute nothing.
    """
    values = matrix.values
    n = matrix.n
    rows, cols, _, total = matrix.marginals
    mass = np.asarray(rows, dtype=np.float64) + np.asarray(cols, dtype=np.float64)

    off = values.copy()
    np.fill_diagonal(off, 0.0)
    a, b = np.nonzero(off)
    if a.size == 0:
        return 0.0
    counts = off[a, b]
    entropy = counts * (np.log(mass[a] / counts) + np.log(mass[b] / counts))
    return float(entropy.sum() / (2.0 * total) / _log_base(n))


def mcc_binary(tp: int, fn: int, fp: int, tn: int) -> float:
    """Binary MCC from the four cells; 0 when a marginal product vanishes."""
    _check_binary(tp, fn, fp, tn)
    return _mcc_from_parts(tp * tn - fp * fn, (tp + fp) * (tn + fn), (tp + fn) * (tn + fp))


def _xlog2(x: int) -> float:
    return x * math.log2(x) if x > 0 else 0.0


def cen_binary(tp: int, fn: int, fp: int, tn: int) -> float:
    """Binary CEN closed form in base 2."""
    _check_binary(tp, fn, fp, tn)
    total = tp + tn + fp + fn
    errors = fn + fp
    if errors == 0:
        return 0.0
    spread = total * total - (tp - tn) * (tp - tn)
    return errors * math.log2(spread) / (2 * total) - (_xlog2(fn) + _xlog2(fp)) / total


def cen_binary_symmetric(t: int, f: int) -> float:
    """CEN of [[T, F], [F, T]]: F/(T+F) * log2(2(T+F)/F)."""
    _check_binary(t, f, f, t)
    if f == 0:
        return 0.0
    return f / (t + f) * math.log2(2 * (t + f) / f)


def _check_binary(*cells: int) -> None:
    if any(c < 0 for c in cells) or sum(cells) < 1:
        raise ParameterError(f"binary cells must be nonnegative with positive total: {cells}")


def k_factor(n: int) -> float:
    """
    Dimension calibration 1.012 (1 + 0.18924/log2 N - 0.06694/log2^2 N).

    Base 2 brings the mean of tMCC / (k * CEN) over the random protocol to
    about 1.005; the natural log leaves it near 0.989.
    """
    if n < 3:
        raise TooFewClassesError(f"k factor is defined for N >= 3, got {n}")
    log_n = math.log2(n)
    return 1.012 * (1.0 + 0.18924 / log_n - 0.06694 / (log_n * log_n))


def tmcc(matrix: ConfusionMatrix) -> float:
    """
    Transformed MCC: (1 - MCC)(1 - log_{2N-2}(1 - ACC))(1 - 1/N).

    Tracks k * CEN; exactly equal to CEN on matrices with constant diagonal
    and constant off-diagonal. Zero when ACC = 1.
    """
    n = matrix.n
    if n < 3:
        raise TooFewClassesError(f"tMCC is defined for N >= 3, got {n}")
    misclassified = matrix.total - matrix.trace
    if misclassified == 0:
        return 0.0
    error_rate = misclassified / matrix.total
    return (1.0 - mcc(matrix)) * (1.0 - math.log(error_rate) / _log_base(n)) * (1.0 - 1.0 / n)


def cen_estimate(matrix: ConfusionMatrix) -> float:
    """CEN approximated from MCC and ACC as tMCC / k."""
    return tmcc(matrix) / k_factor(matrix.n)


def metric_report(matrix: ConfusionMatrix) -> MetricReport:
    """Every measure of one matrix."""
    entropy = cen(matrix)
    if matrix.n >= 3:
        transformed = tmcc(matrix)
        k_cen = k_factor(matrix.n) * entropy
    else:
        logger.debug("tMCC and k*CEN unavailable for binary matrix")
        transformed = None
        k_cen = None
    return MetricReport(
        acc=accuracy(matrix),
        mcc=mcc(matrix),
        cen=entropy,
        tmcc=transformed,
        k_cen=k_cen,
        n=matrix.n,
        total=matrix.total,
    )


def binary_report(tp: int, fn: int, fp: int, tn: int) -> Dict[str, float]:
    """Closed-form binary values next to the general ones for the same cells."""
    matrix = from_entries([[tp, fn], [fp, tn]])
    return {
        "mcc_closed": mcc_binary(tp, fn, fp, tn),
        "mcc_direct": mcc(matrix),
        "cen_closed": cen_binary(tp, fn, fp, tn),
        "cen_direct": cen(matrix),
    }
