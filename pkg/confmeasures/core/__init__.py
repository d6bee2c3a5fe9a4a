"""
Confusion matrices, their measures and the analyses built on them.
"""
from .errors import (
    BudgetExceededError,
    DegenerateStatisticError,
    LabelLengthError,
    LabelRangeError,
    MeasuresError,
    NegativeEntryError,
    NonIntegerEntryError,
    NonSquareError,
    ParameterError,
    ParseError,
    SanityBandError,
    TooFewClassesError,
    ValidationError,
    ZeroTotalError,
)
from .matrix import ConfusionMatrix, Marginals, from_entries, from_label_pairs, marginals, read_csv, scale, write_csv
from .metrics import (
    MetricReport,
    accuracy,
    binary_report,
    cen,
    cen_binary,
    cen_binary_symmetric,
    cen_estimate,
    k_factor,
    mcc,
    mcc_binary,
    mcc_from_labels,
    mcc_triple_sum,
    metric_report,
    tmcc,
)
