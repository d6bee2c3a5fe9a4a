"""
confmeasures: ACC, MCC, Confusion Entropy and the transformed MCC on
multi-class confusion matrices.
"""
from .core.errors import MeasuresError, ValidationError
from .core.matrix import ConfusionMatrix, from_entries, from_label_pairs, read_csv, write_csv
from .core.metrics import MetricReport, accuracy, cen, cen_estimate, k_factor, mcc, metric_report, tmcc
from .core.families import FamilyKind, FamilyParams, closed_forms, compare_family, make_matrix

__version__ = "0.1.0"
