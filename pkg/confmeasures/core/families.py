"""
Analytic confusion-matrix families with closed-form MCC and CEN.

The closed forms act as independent oracles for the direct measures in
`metrics`; `compare_family` tabulates both side by side.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence
import logging
import math

from .errors import ParameterError
from .matrix import ConfusionMatrix
from . import metrics

logger = logging.getLogger(__name__)


class FamilyKind(str, Enum):
    """Matrix families."""
    ZA = "ZA"
    UNBALANCED = "UNBALANCED"
    DIAG_B = "DIAG_B"
    UNIFORM = "UNIFORM"
    OFF_DIAGONAL = "OFF_DIAGONAL"


@dataclass(frozen=True)
class FamilyParams:
    """Parameters selecting one member of a family."""
    kind: FamilyKind
    n: int
    a: Optional[int] = None
    t: Optional[int] = None
    f: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", FamilyKind(self.kind))
        _check_n(self.n)
        if self.kind in (FamilyKind.ZA, FamilyKind.UNBALANCED):
            _check_a(self.a)
        elif self.kind == FamilyKind.DIAG_B:
            if self.t is None or self.f is None:
                raise ParameterError("DIAG_B needs both t and f")
            if self.t < 0 or self.f < 0 or self.t + self.f < 1:
                raise ParameterError(f"DIAG_B needs t, f >= 0 with t + f >= 1, got t={self.t}, f={self.f}")
        elif self.kind == FamilyKind.OFF_DIAGONAL:
            if self.f is None or self.f < 1:
                raise ParameterError(f"OFF_DIAGONAL needs f >= 1, got {self.f}")


@dataclass(frozen=True)
class FamilyCheck:
    """One closed-form vs direct comparison row."""
    measure: str
    closed: float
    direct: float

    @property
    def abs_diff(self) -> float:
        return abs(self.closed - self.direct)


def _check_n(n: int) -> None:
    if n is None or n < 3:
        raise ParameterError(f"family closed forms need n >= 3, got {n}")


def _check_a(a: Optional[int]) -> None:
    if a is None or a < 1:
        raise ParameterError(f"family parameter a must be >= 1, got {a}")


def _log(n: int, x: float) -> float:
    """Logarithm in base 2N-2."""
    return math.log(x) / math.log(2 * n - 2)


def _xlog(n: int, x: float) -> float:
    return x * _log(n, x) if x > 0 else 0.0


def make_matrix(params: FamilyParams) -> ConfusionMatrix:
    """The literal matrix of the selected family member."""
    n = params.n
    if params.kind == FamilyKind.ZA:
        grid = [[1] * n for _ in range(n)]
        grid[n - 1][0] = params.a
    elif params.kind == FamilyKind.UNBALANCED:
        grid = [[1] * n for _ in range(n - 1)] + [[params.a] * n]
    elif params.kind == FamilyKind.DIAG_B:
        grid = [[params.t if i == j else params.f for j in range(n)] for i in range(n)]
    elif params.kind == FamilyKind.UNIFORM:
        grid = [[1] * n for _ in range(n)]
    else:
        grid = [[0 if i == j else params.f for j in range(n)] for i in range(n)]
    return ConfusionMatrix(grid)


def single_column_matrix(column_entries: Sequence[int], column: int = 0) -> ConfusionMatrix:
    """All samples predicted as one class: zero everywhere but one column."""
    n = len(column_entries)
    if not 0 <= column < n:
        raise ParameterError(f"column {column} outside [0, {n - 1}]")
    return ConfusionMatrix(
        [[column_entries[i] if j == column else 0 for j in range(n)] for i in range(n)]
    )


def acc_za_closed(n: int, a: int) -> float:
    """ACC(Z_A) = N / (N^2 + A - 1)."""
    _check_n(n)
    _check_a(a)
    return n / (n * n + a - 1)


def mcc_za_closed(n: int, a: int) -> float:
    """MCC(Z_A) = -(A-1) / ((N-1)(N^2 + 2A - 2))."""
    _check_n(n)
    _check_a(a)
    return -(a - 1) / ((n - 1) * (n * n + 2 * a - 2))


def mcc_za_printed(n: int, a: int) -> float:
    """The printed variant with denominator (N-1)(N^2 - 2A - 2); disagrees with direct MCC."""
    _check_n(n)
    _check_a(a)
    denominator = (n - 1) * (n * n - 2 * a - 2)
    if denominator == 0:
        raise ParameterError(f"printed MCC(Z_A) denominator vanishes at n={n}, a={a}")
    return -(a - 1) / denominator


def cen_za_closed(n: int, a: int) -> float:
    """CEN(Z_A)."""
    _check_n(n)
    _check_a(a)
    bracket = (
        (n - 2) * (n - 1) * _log(n, 2 * n)
        + (2 * n + a - 3) * _log(n, 2 * n + a - 1)
        - _xlog(n, a)
    )
    return bracket / (n * n + a - 1)


def cen_unbalanced_closed(n: int, a: int) -> float:
    """CEN of the all-ones matrix whose last row is all A."""
    _check_n(n)
    _check_a(a)
    bracket = (
        (2 * n + a - 3) * _log(n, 2 * n + a - 1)
        - 2 * _xlog(n, a)
        + (a + 1) * _log(n, n + n * a + a - 1)
    )
    return (n - 1) / (2 * n * (n + a - 1)) * bracket


def cen_unbalanced_limit(n: int) -> float:
    """Limit of the unbalanced CEN as A grows: (N-1)/(2N) log_{2N-2}(N+1)."""
    _check_n(n)
    return (n - 1) / (2 * n) * _log(n, n + 1)


def _check_tf(t: int, f: int) -> None:
    if t < 0 or f < 0 or t + f < 1:
        raise ParameterError(f"need t, f >= 0 with t + f >= 1, got t={t}, f={f}")


def mcc_b_closed(n: int, t: int, f: int) -> float:
    """MCC of B(T,F) = (T^2 + (N-2)TF - (N-1)F^2) / (T + (N-1)F)^2."""
    _check_n(n)
    _check_tf(t, f)
    if f == 0:
        return 1.0
    return (t * t + (n - 2) * t * f - (n - 1) * f * f) / (t + (n - 1) * f) ** 2


def cen_b_closed(n: int, t: int, f: int) -> float:
    """CEN of B(T,F) = (N-1)F/(T+(N-1)F) log_{2N-2}(2(T+(N-1)F)/F)."""
    _check_n(n)
    _check_tf(t, f)
    if f == 0:
        return 0.0
    row = t + (n - 1) * f
    return (n - 1) * f / row * _log(n, 2 * row / f)


def cen_identity_b(n: int, t: int, f: int) -> float:
    """CEN of B(T,F) rebuilt from its MCC: (1-MCC)(1 + log((T+(N-1)F)/((N-1)F)))(1-1/N)."""
    _check_n(n)
    _check_tf(t, f)
    if f == 0:
        return 0.0
    row = t + (n - 1) * f
    return (1.0 - mcc_b_closed(n, t, f)) * (1.0 + _log(n, row / ((n - 1) * f))) * (1.0 - 1.0 / n)


def cen_uniform(n: int) -> float:
    """CEN of a matrix with all entries equal: (1 - 1/N) log_{2N-2}(2N)."""
    _check_n(n)
    return (1.0 - 1.0 / n) * _log(n, 2 * n)


def closed_forms(params: FamilyParams) -> Dict[str, float]:
    """Closed-form values available for the family member."""
    n = params.n
    if params.kind == FamilyKind.ZA:
        return {
            "acc": acc_za_closed(n, params.a),
            "mcc": mcc_za_closed(n, params.a),
            "cen": cen_za_closed(n, params.a),
        }
    if params.kind == FamilyKind.UNBALANCED:
        return {"mcc": 0.0, "cen": cen_unbalanced_closed(n, params.a)}
    if params.kind == FamilyKind.DIAG_B:
        return {
            "mcc": mcc_b_closed(n, params.t, params.f),
            "cen": cen_b_closed(n, params.t, params.f),
            "cen_identity": cen_identity_b(n, params.t, params.f),
        }
    if params.kind == FamilyKind.UNIFORM:
        return {"mcc": 0.0, "cen": cen_uniform(n)}
    return {"mcc": mcc_b_closed(n, 0, params.f), "cen": 1.0}


_DIRECT: Dict[str, Callable[[ConfusionMatrix], float]] = {
    "acc": metrics.accuracy,
    "mcc": metrics.mcc,
    "cen": metrics.cen,
    "cen_identity": metrics.cen,
}


def compare_family(params: FamilyParams) -> List[FamilyCheck]:
    """Closed-form vs direct rows for the family member."""
    matrix = make_matrix(params)
    checks = [
        FamilyCheck(measure=name, closed=value, direct=_DIRECT[name](matrix))
        for name, value in closed_forms(params).items()
    ]
    worst = max(check.abs_diff for check in checks)
    logger.debug(f"{params.kind.value} n={params.n}: largest closed/direct gap {worst:.3e}")
    return checks
