"""
Confusion matrix type, constructors, marginals and CSV I/O.

Entry (i, j) counts the samples of true class i predicted as class j. Classes
are 0-based inside the library; `from_label_pairs(..., one_based=True)` and the
CLI accept the 1..N labelling.
"""
from dataclasses import dataclass, field
from numbers import Integral
from pathlib import Path
from typing import IO, List, NamedTuple, Sequence, Tuple, Union
import csv
import logging
import re

import numpy as np

from .errors import (
    LabelLengthError,
    LabelRangeError,
    NegativeEntryError,
    NonIntegerEntryError,
    NonSquareError,
    ParameterError,
    ParseError,
    TooFewClassesError,
    ZeroTotalError,
)

logger = logging.getLogger(__name__)

Grid = Sequence[Sequence[int]]
Source = Union[str, Path, IO[str]]

_TOKEN = re.compile(r"[+-]?\d+")


class Marginals(NamedTuple):
    row_sums: Tuple[int, ...]
    col_sums: Tuple[int, ...]
    trace: int
    total: int


def _normalize(rows: Grid) -> Tuple[Tuple[int, ...], ...]:
    """Check a grid against the matrix invariants and freeze it."""
    rows = [list(row) for row in rows]
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise NonSquareError(
                f"row {i} has {len(row)} entries, expected {n} (grid must be square)"
            )
    if n < 2:
        raise TooFewClassesError(f"confusion matrix needs at least 2 classes, got {n}")

    frozen = []
    total = 0
    for i, row in enumerate(rows):
        out = []
        for j, value in enumerate(row):
            if isinstance(value, bool) or not isinstance(value, Integral):
                raise NonIntegerEntryError(f"entry ({i},{j}) is not an integer: {value!r}")
            value = int(value)
            if value < 0:
                raise NegativeEntryError(f"entry ({i},{j}) is negative: {value}")
            total += value
            out.append(value)
        frozen.append(tuple(out))
    if total == 0:
        raise ZeroTotalError("confusion matrix total must be at least 1")
    return tuple(frozen)


@dataclass(frozen=True)
class ConfusionMatrix:
    """Square nonnegative integer matrix of true-class x predicted-class counts."""

    entries: Tuple[Tuple[int, ...], ...]
    _marginals: Marginals = field(init=False, repr=False, compare=False)
    _values: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        entries = _normalize(self.entries)
        object.__setattr__(self, "entries", entries)

        row_sums = tuple(sum(row) for row in entries)
        col_sums = tuple(sum(col) for col in zip(*entries))
        trace = sum(entries[k][k] for k in range(len(entries)))
        object.__setattr__(
            self, "_marginals", Marginals(row_sums, col_sums, trace, sum(row_sums))
        )

        values = np.array(entries, dtype=np.float64)
        values.setflags(write=False)
        object.__setattr__(self, "_values", values)

    @classmethod
    def from_array(cls, array: np.ndarray) -> "ConfusionMatrix":
        """Build from an integer numpy array."""
        array = np.asarray(array)
        if array.dtype.kind not in "iu":
            raise NonIntegerEntryError(f"array dtype must be integer, got {array.dtype}")
        return cls(tuple(map(tuple, array.tolist())))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def values(self) -> np.ndarray:
        """Read-only float64 view of the counts."""
        return self._values

    @property
    def marginals(self) -> Marginals:
        return self._marginals

    @property
    def total(self) -> int:
        return self._marginals.total

    @property
    def trace(self) -> int:
        return self._marginals.trace

    def is_diagonal(self) -> bool:
        return all(
            value == 0
            for i, row in enumerate(self.entries)
            for j, value in enumerate(row)
            if i != j
        )

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.entries]

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def __str__(self) -> str:
        width = max(len(str(v)) for row in self.entries for v in row)
        return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in self.entries)


def from_entries(rows: Grid) -> ConfusionMatrix:
    """Matrix with exactly the given entries."""
    return ConfusionMatrix(rows)


def from_label_pairs(true_labels: Sequence[int],
                     predicted_labels: Sequence[int],
                     n: int,
                     one_based: bool = False) -> ConfusionMatrix:
    """Count (true, predicted) label pairs into an n x n matrix."""
    if len(true_labels) != len(predicted_labels):
        raise LabelLengthError(
            f"label sequences differ in length: {len(true_labels)} vs {len(predicted_labels)}"
        )
    if n < 2:
        raise TooFewClassesError(f"need at least 2 classes, got {n}")
    if len(true_labels) == 0:
        raise ZeroTotalError("label sequences are empty")

    offset = 1 if one_based else 0
    low, high = offset, n - 1 + offset
    for name, labels in (("true", true_labels), ("predicted", predicted_labels)):
        for position, label in enumerate(labels):
            if isinstance(label, bool) or not isinstance(label, Integral):
                raise LabelRangeError(f"{name} label at {position} is not an integer: {label!r}")
            if not low <= label <= high:
                raise LabelRangeError(
                    f"{name} label {label} at {position} outside [{low}, {high}]"
                )

    tc = np.asarray(true_labels, dtype=np.int64) - offset
    pc = np.asarray(predicted_labels, dtype=np.int64) - offset
    counts = np.bincount(tc * n + pc, minlength=n * n).reshape(n, n)
    return ConfusionMatrix.from_array(counts)


def scale(matrix: ConfusionMatrix, m: int) -> ConfusionMatrix:
    """Multiply every entry by a positive integer."""
    if isinstance(m, bool) or not isinstance(m, Integral) or m < 1:
        raise ParameterError(f"scale factor must be a positive integer, got {m!r}")
    return ConfusionMatrix(tuple(tuple(v * m for v in row) for row in matrix.entries))


def marginals(matrix: ConfusionMatrix) -> Marginals:
    """Exact row sums, column sums, trace and total."""
    return matrix.marginals


def _open_for_read(source: Source):
    if isinstance(source, (str, Path)):
        return open(source, "r", newline=""), True
    return source, False


def read_csv(source: Source) -> ConfusionMatrix:
    """Parse N lines of N comma-separated nonnegative integers (no header)."""
    handle, owned = _open_for_read(source)
    try:
        rows: List[List[int]] = []
        blank_line = None
        width = None
        for lineno, row in enumerate(csv.reader(handle), start=1):
            if not row or all(not token.strip() for token in row):
                if rows:
                    blank_line = blank_line or lineno
                continue
            if blank_line is not None:
                raise ParseError("blank line inside matrix", blank_line)
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ParseError(f"ragged row: {len(row)} fields, expected {width}", lineno)
            parsed = []
            for token in row:
                token = token.strip()
                if not _TOKEN.fullmatch(token):
                    raise ParseError(f"non-integer token {token!r}", lineno)
                value = int(token)
                if value < 0:
                    raise ParseError(f"negative entry {value}", lineno)
                parsed.append(value)
            rows.append(parsed)
    finally:
        if owned:
            handle.close()

    if not rows:
        raise ParseError("empty input")
    return from_entries(rows)


def write_csv(matrix: ConfusionMatrix, sink: Source) -> None:
    """Write one line per true class, comma separated, trailing newline."""
    text = "".join(",".join(str(v) for v in row) + "\n" for row in matrix.entries)
    if isinstance(sink, (str, Path)):
        with open(sink, "w", newline="") as handle:
            handle.write(text)
        logger.debug(f"Wrote {matrix.n}x{matrix.n} matrix to {sink}")
    else:
        sink.write(text)
