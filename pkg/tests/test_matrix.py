import io

import numpy as np
import pytest

from confmeasures.core.errors import (
    LabelLengthError,
    LabelRangeError,
    NegativeEntryError,
    NonIntegerEntryError,
    NonSquareError,
    ParameterError,
    ParseError,
    TooFewClassesError,
    ValidationError,
    ZeroTotalError,
)
from confmeasures.core.matrix import (
    ConfusionMatrix,
    from_entries,
    from_label_pairs,
    marginals,
    read_csv,
    scale,
    write_csv,
)


def test_marginals():
    m = from_entries([[1, 2], [3, 4]])
    assert m.n == 2
    assert marginals(m) == ((3, 7), (4, 6), 5, 10)
    assert m.total == 10
    assert m.trace == 5
    assert m[1, 0] == 3


@pytest.mark.parametrize("grid, error", [
    ([[1, 2], [3]], NonSquareError),
    ([[1, 2, 3], [4, 5, 6]], NonSquareError),
    ([[5]], TooFewClassesError),
    ([], TooFewClassesError),
    ([[1, -1], [0, 1]], NegativeEntryError),
    ([[0, 0], [0, 0]], ZeroTotalError),
    ([[1.5, 0], [0, 1]], NonIntegerEntryError),
    ([[True, 0], [0, 1]], NonIntegerEntryError),
])
def test_invalid_grids(grid, error):
    with pytest.raises(error):
        ConfusionMatrix(grid)


def test_validation_errors_are_value_errors():
    with pytest.raises(ValueError):
        ConfusionMatrix([[0, 0], [0, 0]])
    assert issubclass(ParseError, ValidationError)


def test_zero_rows_allowed():
    m = from_entries([[0, 0], [0, 3]])
    assert m.marginals.row_sums == (0, 3)


def test_is_diagonal(identity3, ones3):
    assert identity3.is_diagonal()
    assert not ones3.is_diagonal()


def test_values_are_read_only(ones3):
    with pytest.raises(ValueError):
        ones3.values[0, 0] = 5.0


def test_equality_and_hash():
    a = from_entries([[1, 2], [3, 4]])
    b = ConfusionMatrix(((1, 2), (3, 4)))
    assert a == b
    assert hash(a) == hash(b)


def test_from_array():
    m = ConfusionMatrix.from_array(np.array([[2, 1], [0, 3]], dtype=np.int64))
    assert m.to_lists() == [[2, 1], [0, 3]]
    with pytest.raises(NonIntegerEntryError):
        ConfusionMatrix.from_array(np.array([[2.0, 1.0], [0.0, 3.0]]))


def test_from_label_pairs_zero_based():
    m = from_label_pairs([0, 1, 2, 2], [0, 1, 1, 2], 3)
    assert m.to_lists() == [[1, 0, 0], [0, 1, 0], [0, 1, 1]]


def test_from_label_pairs_one_based():
    m = from_label_pairs([1, 2, 2], [2, 2, 1], 2, one_based=True)
    assert m.to_lists() == [[0, 1], [1, 1]]


def test_from_label_pairs_errors():
    with pytest.raises(LabelLengthError):
        from_label_pairs([0, 1], [0], 2)
    with pytest.raises(LabelRangeError):
        from_label_pairs([0, 2], [0, 1], 2)
    with pytest.raises(LabelRangeError):
        from_label_pairs([0, 1], [0, 1], 2, one_based=True)
    with pytest.raises(TooFewClassesError):
        from_label_pairs([0], [0], 1)
    with pytest.raises(ZeroTotalError):
        from_label_pairs([], [], 2)


def test_scale():
    m = scale(from_entries([[1, 2], [0, 3]]), 4)
    assert m.to_lists() == [[4, 8], [0, 12]]
    with pytest.raises(ParameterError):
        scale(m, 0)


def test_read_csv_stream():
    m = read_csv(io.StringIO("1, 2\n3,4\n\n"))
    assert m.to_lists() == [[1, 2], [3, 4]]


def test_read_csv_leading_blank_line():
    m = read_csv(io.StringIO("\n1,2\n3,4\n"))
    assert m.to_lists() == [[1, 2], [3, 4]]


@pytest.mark.parametrize("text, line", [
    ("1,2\n\n3,4\n", 2),
    ("1,2\n3,4,5\n", 2),
    ("1,2\n3,x\n", 2),
    ("1,2.5\n3,4\n", 1),
    ("1,2\n-3,4\n", 2),
])
def test_read_csv_errors_carry_line(text, line):
    with pytest.raises(ParseError) as excinfo:
        read_csv(io.StringIO(text))
    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f"line {line}:")


def test_read_csv_empty():
    with pytest.raises(ParseError):
        read_csv(io.StringIO(""))


def test_read_csv_non_square_file(write_matrix):
    with pytest.raises(NonSquareError):
        read_csv(write_matrix("1,2\n3,4\n5,6\n"))


def test_write_then_read(tmp_path):
    m = from_entries([[5, 0, 1], [2, 7, 0], [0, 0, 9]])
    path = tmp_path / "m.csv"
    write_csv(m, str(path))
    assert path.read_text() == "5,0,1\n2,7,0\n0,0,9\n"
    assert read_csv(str(path)) == m
