"""
Random confusion matrices for the Monte-Carlo study.

Each matrix index owns an independent PCG64 stream derived from
(seed, index) through numpy's SeedSequence, so a record depends only on its
index and never on how the indices are spread over workers.
"""
from typing import Tuple
import math

import numpy as np

from ..matrix import ConfusionMatrix

RNG_ALGORITHM = "numpy.PCG64/SeedSequence(entropy=seed, spawn_key=(index,))"


def matrix_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for one matrix index."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(index,))))


def generate_matrix(rng: np.random.Generator,
                    n: int,
                    diag_max: int = 1000,
                    rho_min: float = 0.01,
                    rho_max: float = 1.0) -> ConfusionMatrix:
    """
    Diagonal uniform in [1, diag_max]; one rho ~ U[rho_min, rho_max] per
    matrix; off-diagonal uniform in [1, floor(diag_max * rho)].
    """
    rho = rng.uniform(rho_min, rho_max)
    bound = max(1, math.floor(diag_max * rho))
    counts = rng.integers(1, bound, size=(n, n), endpoint=True)
    np.fill_diagonal(counts, rng.integers(1, diag_max, size=n, endpoint=True))
    return ConfusionMatrix.from_array(counts)


def draw_indexed_matrix(seed: int, index: int, dim_min: int, dim_max: int,
                        diag_max: int, rho_min: float, rho_max: float) -> Tuple[int, ConfusionMatrix]:
    """Dimension uniform over [dim_min, dim_max], then the matrix, from the index's stream."""
    rng = matrix_rng(seed, index)
    n = int(rng.integers(dim_min, dim_max, endpoint=True))
    return n, generate_matrix(rng, n, diag_max, rho_min, rho_max)


# Spawn-key prefix for auxiliary streams; matrix streams use one-element keys.
_AUX_KEY = 2 ** 32


def derived_seed(seed: int, stream: int) -> int:
    """Seed for an auxiliary stream (reservoir, pair sampling, bootstrap)."""
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(_AUX_KEY, stream))
    return int(sequence.generate_state(1)[0])
