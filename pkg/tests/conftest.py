import pytest

from confmeasures.core.matrix import ConfusionMatrix


@pytest.fixture
def identity3():
    return ConfusionMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


@pytest.fixture
def ones3():
    return ConfusionMatrix([[1] * 3 for _ in range(3)])


@pytest.fixture
def write_matrix(tmp_path):
    """Write CSV text to a file and return its path."""
    def _write(text: str, name: str = "matrix.csv") -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write
