"""
Monte-Carlo study of tMCC against k * CEN.

Matrices are drawn per index (see `generator`), evaluated, streamed to the
record sink in index order and folded into single-pass accumulators. The
bootstrap interval and the pair statistics run on a seeded reservoir of at
most `reservoir_size` records.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Dict, Iterable, Iterator, List, Optional, TextIO, Tuple, Union
import logging

import numpy as np
import yaml

from ..analysis import (
    RunningMean,
    StreamingPearson,
    bootstrap_mean_ci,
    degrees,
    sampled_degrees,
)
from ..errors import DegenerateStatisticError, ParameterError
from ..params import coerce_numeric_fields
from .. import metrics
from .generator import RNG_ALGORITHM, derived_seed, draw_indexed_matrix

# Auxiliary stream ids for derived_seed.
_RESERVOIR_STREAM = 0
_PAIR_STREAM = 1
_BOOTSTRAP_STREAM = 2


@dataclass
class ExperimentConfig:
    """Generation protocol and summary settings."""
    n_matrices: int = 200_000
    dim_min: int = 3
    dim_max: int = 30
    diag_max: int = 1000
    rho_min: float = 0.01
    rho_max: float = 1.0
    seed: int = 42
    bootstrap_resamples: int = 10_000
    bootstrap_level: float = 0.95
    consistency_pairs: int = 10 ** 8
    pair_budget: int = 10 ** 8
    reservoir_size: int = 200_000
    tie_tolerance: float = 1e-12

    def __post_init__(self):
        coerce_numeric_fields(self)
        if self.n_matrices < 1:
            raise ParameterError(f"n_matrices must be >= 1, got {self.n_matrices}")
        if not 3 <= self.dim_min <= self.dim_max:
            raise ParameterError(f"need 3 <= dim_min <= dim_max, got {self.dim_min}..{self.dim_max}")
        if self.diag_max < 1:
            raise ParameterError(f"diag_max must be >= 1, got {self.diag_max}")
        if not 0.0 < self.rho_min <= self.rho_max <= 1.0:
            raise ParameterError(f"need 0 < rho_min <= rho_max <= 1, got {self.rho_min}..{self.rho_max}")
        if self.seed < 0:
            raise ParameterError(f"seed must be nonnegative, got {self.seed}")
        if self.bootstrap_resamples < 100:
            raise ParameterError(f"bootstrap_resamples must be >= 100, got {self.bootstrap_resamples}")
        if not 0.0 < self.bootstrap_level < 1.0:
            raise ParameterError(f"bootstrap_level must lie in (0, 1), got {self.bootstrap_level}")
        if self.consistency_pairs < 1 or self.pair_budget < 1:
            raise ParameterError("consistency_pairs and pair_budget must be >= 1")
        if self.reservoir_size < 2:
            raise ParameterError(f"reservoir_size must be >= 2, got {self.reservoir_size}")
        if self.tie_tolerance < 0:
            raise ParameterError(f"tie_tolerance must be >= 0, got {self.tie_tolerance}")

    def to_dict(self) -> Dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ParameterError(f"unknown experiment settings: {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def from_yaml(cls, path: str) -> "ExperimentConfig":
        with open(path, 'r') as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ParameterError(f"experiment config {path} must hold a mapping")
        # a summary document carries the config under its own key
        if "config" in data and isinstance(data["config"], dict):
            data = data["config"]
        return cls.from_dict(data)


@dataclass(frozen=True)
class ExperimentRecord:
    """One generated matrix; ratio is None when CEN is zero."""
    index: int
    n: int
    acc: float
    mcc: float
    cen: float
    k_cen: float
    tmcc: float
    ratio: Optional[float]


@dataclass
class ExperimentSummary:
    pearson_r: Optional[float]
    consistency: Optional[float]
    discriminancy: Optional[float]
    mean_ratio: Optional[float]
    ci_lo: Optional[float]
    ci_hi: Optional[float]
    n_matrices: int
    seed: int
    mean_unscaled_ratio: Optional[float]
    consistency_pairs: int
    consistency_sampled: bool
    flagged_records: int
    rng_algorithm: str
    ratio_by_dimension: Dict[int, Dict[str, float]]
    config: ExperimentConfig

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["ratio_by_dimension"] = {
            str(n): dict(stats) for n, stats in sorted(self.ratio_by_dimension.items())
        }
        return data


def evaluate_index(index: int, config: ExperimentConfig) -> ExperimentRecord:
    """Draw matrix `index` of the run and evaluate every measure on it."""
    n, matrix = draw_indexed_matrix(
        config.seed, index, config.dim_min, config.dim_max,
        config.diag_max, config.rho_min, config.rho_max,
    )
    entropy = metrics.cen(matrix)
    k_cen = metrics.k_factor(n) * entropy
    transformed = metrics.tmcc(matrix)
    return ExperimentRecord(
        index=index,
        n=n,
        acc=metrics.accuracy(matrix),
        mcc=metrics.mcc(matrix),
        cen=entropy,
        k_cen=k_cen,
        tmcc=transformed,
        ratio=transformed / k_cen if k_cen > 0 else None,
    )


def _evaluate_span(task: Tuple[int, int, ExperimentConfig]) -> List[ExperimentRecord]:
    start, stop, config = task
    return [evaluate_index(index, config) for index in range(start, stop)]


class SummaryAccumulator:
    """Folds records into the experiment summary in one pass."""

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.logger = logging.getLogger(__name__)
        self.pearson = StreamingPearson()
        self.ratio = RunningMean()
        self.unscaled_ratio = RunningMean()
        self.by_dimension: Dict[int, RunningMean] = {}
        self.seen = 0
        self.flagged = 0
        self._reservoir: List[ExperimentRecord] = []
        self._rng = np.random.default_rng(derived_seed(config.seed, _RESERVOIR_STREAM))

    def update(self, record: ExperimentRecord) -> None:
        self.seen += 1
        self.pearson.update(record.tmcc, record.k_cen)
        if record.ratio is None:
            self.flagged += 1
            self.logger.warning(f"Matrix {record.index} has zero CEN; ratio left undefined")
        else:
            self.ratio.update(record.ratio)
            self.unscaled_ratio.update(record.tmcc / record.cen)
            self.by_dimension.setdefault(record.n, RunningMean()).update(record.ratio)
        self._sample(record)

    def _sample(self, record: ExperimentRecord) -> None:
        size = self.config.reservoir_size
        if len(self._reservoir) < size:
            self._reservoir.append(record)
            return
        slot = int(self._rng.integers(0, self.seen))
        if slot < size:
            self._reservoir[slot] = record

    def _pair_statistics(self) -> Tuple[Optional[float], Optional[float], int, bool]:
        if len(self._reservoir) < 2:
            self.logger.warning("Consistency and discriminancy undefined for fewer than 2 records")
            return None, None, 0, False
        # both oriented larger = worse
        tmcc = np.array([r.tmcc for r in self._reservoir])
        k_cen = np.array([r.k_cen for r in self._reservoir])
        size = tmcc.size
        total_pairs = size * (size - 1) // 2
        if total_pairs <= self.config.pair_budget:
            result = degrees(tmcc, k_cen, self.config.tie_tolerance)
        else:
            self.logger.info(f"{total_pairs} pairs exceed the budget; sampling {self.config.consistency_pairs}")
            result = sampled_degrees(
                tmcc, k_cen, self.config.consistency_pairs,
                seed=derived_seed(self.config.seed, _PAIR_STREAM),
                tie_tolerance=self.config.tie_tolerance,
            )
        if result.consistency is None:
            self.logger.warning("Consistency undefined: no pair strictly ordered by both measures")
        return result.consistency, result.discriminancy, result.n_pairs, result.sampled

    def _interval(self) -> Tuple[Optional[float], Optional[float]]:
        ratios = [r.ratio for r in self._reservoir if r.ratio is not None]
        if not ratios:
            self.logger.warning("Bootstrap interval undefined: no finite ratios")
            return None, None
        try:
            interval = bootstrap_mean_ci(
                ratios,
                n_resamples=self.config.bootstrap_resamples,
                level=self.config.bootstrap_level,
                seed=derived_seed(self.config.seed, _BOOTSTRAP_STREAM),
            )
        except DegenerateStatisticError as e:
            self.logger.warning(f"Bootstrap interval undefined: {e}")
            return None, None
        return interval.lo, interval.hi

    def finalize(self) -> ExperimentSummary:
        try:
            pearson_r = self.pearson.correlation()
        except DegenerateStatisticError as e:
            self.logger.warning(f"Pearson correlation undefined: {e}")
            pearson_r = None
        consistency, discriminancy, pairs, sampled = self._pair_statistics()
        ci_lo, ci_hi = self._interval()
        return ExperimentSummary(
            pearson_r=pearson_r,
            consistency=consistency,
            discriminancy=discriminancy,
            mean_ratio=self.ratio.mean if self.ratio.count else None,
            ci_lo=ci_lo,
            ci_hi=ci_hi,
            n_matrices=self.seen,
            seed=self.config.seed,
            mean_unscaled_ratio=self.unscaled_ratio.mean if self.unscaled_ratio.count else None,
            consistency_pairs=pairs,
            consistency_sampled=sampled,
            flagged_records=self.flagged,
            rng_algorithm=RNG_ALGORITHM,
            ratio_by_dimension={
                n: {"count": acc.count, "mean_ratio": acc.mean}
                for n, acc in sorted(self.by_dimension.items())
            },
            config=self.config,
        )


def summarize(records: Iterable[ExperimentRecord], config: ExperimentConfig) -> ExperimentSummary:
    """Summary statistics of records in index order."""
    accumulator = SummaryAccumulator(config)
    for record in records:
        accumulator.update(record)
    return accumulator.finalize()


class ExperimentRunner:
    """Generates, evaluates and summarizes the random matrices of one run."""

    def __init__(self, config: ExperimentConfig, jobs: int = 1, chunk_size: int = 1000):
        if jobs < 1:
            raise ParameterError(f"jobs must be >= 1, got {jobs}")
        if chunk_size < 1:
            raise ParameterError(f"chunk_size must be >= 1, got {chunk_size}")
        self.config = config
        self.jobs = jobs
        self.chunk_size = chunk_size
        self.logger = logging.getLogger(__name__)

    def _tasks(self) -> List[Tuple[int, int, ExperimentConfig]]:
        total = self.config.n_matrices
        return [
            (start, min(start + self.chunk_size, total), self.config)
            for start in range(0, total, self.chunk_size)
        ]

    def iter_chunks(self) -> Iterator[List[ExperimentRecord]]:
        """Record chunks in index order."""
        tasks = self._tasks()
        if self.jobs == 1:
            for task in tasks:
                yield _evaluate_span(task)
            return
        with ProcessPoolExecutor(max_workers=self.jobs) as pool:
            yield from pool.map(_evaluate_span, tasks)

    def iter_records(self) -> Iterator[ExperimentRecord]:
        for chunk in self.iter_chunks():
            yield from chunk

    def run(self, records_sink: Union[str, TextIO, None] = None) -> ExperimentSummary:
        """Stream every record to `records_sink` (if given) and return the summary."""
        from .emit import RecordWriter

        self.logger.info(
            f"Running {self.config.n_matrices} matrices, dims {self.config.dim_min}..{self.config.dim_max}, "
            f"seed {self.config.seed}, {self.jobs} job(s)"
        )
        accumulator = SummaryAccumulator(self.config)
        writer = RecordWriter(records_sink) if records_sink is not None else None
        try:
            for chunk in self.iter_chunks():
                if writer is not None:
                    writer.write(chunk)
                for record in chunk:
                    accumulator.update(record)
                self.logger.info(f"Evaluated {accumulator.seen}/{self.config.n_matrices} matrices")
        except OSError as e:
            self.logger.error(f"Writing records failed: {str(e)}")
            raise
        finally:
            if writer is not None:
                writer.close()
        summary = accumulator.finalize()
        self.logger.info(f"Pearson r = {summary.pearson_r}, mean ratio = {summary.mean_ratio}")
        return summary
