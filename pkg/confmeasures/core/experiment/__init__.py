"""
Seeded Monte-Carlo study relating tMCC and k * CEN.
"""
from .emit import (
    FORMATS,
    RECORD_COLUMNS,
    RecordWriter,
    dimension_table,
    emit,
    load_records,
    load_summary,
    records_frame,
    write_records,
    write_summary,
)
from .generator import RNG_ALGORITHM, derived_seed, draw_indexed_matrix, generate_matrix, matrix_rng
from .runner import (
    ExperimentConfig,
    ExperimentRecord,
    ExperimentRunner,
    ExperimentSummary,
    SummaryAccumulator,
    evaluate_index,
    summarize,
)


def run(config: ExperimentConfig, records_sink=None, jobs: int = 1) -> ExperimentSummary:
    """Run one experiment, streaming records to `records_sink` when given."""
    return ExperimentRunner(config, jobs=jobs).run(records_sink)
