"""
Measure-comparison statistics over collections of confusion matrices.
"""
from .comparison import ComparisonResult, DEFAULT_TIE_TOLERANCE, degrees, sampled_degrees
from .enumeration import count_fixed_row_sums, enumerate_fixed_row_sums, weak_compositions
from .statistics import (
    BootstrapInterval,
    RunningMean,
    StreamingPearson,
    bootstrap_mean_ci,
    pearson_correlation,
)
