"""
Command-line front end.

    python -m confmeasures compute matrix.csv [--binary-closed-form]
    python -m confmeasures family ZA --n 3 --a 3
    python -m confmeasures enumerate-compare --rows 2,4,3 --pair cen-mcc
    python -m confmeasures experiment --n 20000 --seed 42 --records r.csv --summary s.json

Exit codes: 0 ok, 2 invalid input, 3 pair budget exceeded, 4 I/O failure,
5 experiment outside the sanity band, 6 closed form disagrees with direct value.
"""
from typing import Callable, Dict, List, Optional, Sequence
import argparse
import json
import logging
import sys

from .config import Settings, load_settings, setup_logging
from .core import metrics
from .core.analysis import count_fixed_row_sums, degrees, enumerate_fixed_row_sums
from .core.errors import (
    BudgetExceededError,
    DegenerateStatisticError,
    ParameterError,
    SanityBandError,
    ValidationError,
)
from .core.experiment import ExperimentConfig, ExperimentRunner, dimension_table, write_summary
from .core.families import FamilyKind, FamilyParams, compare_family, make_matrix, mcc_za_printed
from .core.matrix import ConfusionMatrix, read_csv
from .core.validation import check_oracle_agreement, check_sanity_band

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3
EXIT_IO = 4
EXIT_SANITY = 5
EXIT_ORACLE = 6

# Measures for enumerate-compare, oriented larger = better.
_ORIENTED: Dict[str, Callable[[ConfusionMatrix], float]] = {
    "acc": metrics.accuracy,
    "mcc": metrics.mcc,
    "cen": lambda m: -metrics.cen(m),
    "tmcc": lambda m: -metrics.tmcc(m),
}


class _Formatter:
    def __init__(self, digits: int, full_precision: bool):
        self.digits = digits
        self.full_precision = full_precision

    def __call__(self, value) -> str:
        if value is None:
            return "undefined"
        if isinstance(value, (bool, int, str)):
            return str(value)
        if self.full_precision:
            return repr(float(value))
        return f"{value:.{self.digits}g}"


def _print_rows(rows: Sequence, fmt: _Formatter) -> None:
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {fmt(value)}")


def _parse_rows(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"row sums must be comma-separated integers: {text!r}")


def _parse_pair(text: str):
    parts = text.split("-")
    if len(parts) != 2 or any(p not in _ORIENTED for p in parts):
        raise argparse.ArgumentTypeError(
            f"pair must be f-g with f, g in {', '.join(_ORIENTED)}: {text!r}"
        )
    return parts[0], parts[1]


def cmd_compute(args, settings: Settings, fmt: _Formatter) -> int:
    matrix = read_csv(args.matrix)
    report = metrics.metric_report(matrix)
    print(matrix)
    _print_rows([(k, v) for k, v in report.to_dict().items()], fmt)
    document = {"report": report.to_dict()}

    status = EXIT_OK
    if args.binary_closed_form:
        if matrix.n != 2:
            raise ParameterError(f"--binary-closed-form needs a 2x2 matrix, got {matrix.n}x{matrix.n}")
        (tp, fn), (fp, tn) = matrix.entries
        binary = metrics.binary_report(tp, fn, fp, tn)
        _print_rows([(k, v) for k, v in binary.items()], fmt)
        document["binary"] = binary
        gaps = [abs(binary["mcc_closed"] - binary["mcc_direct"]),
                abs(binary["cen_closed"] - binary["cen_direct"])]
        if max(gaps) > settings.oracle_tolerance:
            logger.error(f"Binary closed forms disagree with direct values by {max(gaps):.3e}")
            status = EXIT_ORACLE

    if args.output:
        with open(args.output, 'w') as f:
            json.dump(document, f, indent=2)
    return status


def cmd_family(args, settings: Settings, fmt: _Formatter) -> int:
    params = FamilyParams(kind=FamilyKind(args.kind), n=args.n, a=args.a, t=args.t, f=args.f)
    print(make_matrix(params))
    checks = compare_family(params)
    width = max(len(c.measure) for c in checks)
    print(f"{'measure':<{width}}  closed  direct  abs_diff")
    for check in checks:
        print(f"{check.measure:<{width}}  {fmt(check.closed)}  {fmt(check.direct)}  {check.abs_diff:.3e}")
    if params.kind == FamilyKind.ZA:
        try:
            print(f"printed-form mcc: {fmt(mcc_za_printed(params.n, params.a))}")
        except ParameterError as e:
            logger.info(f"Printed-form mcc unavailable: {e}")

    tolerance = args.tolerance if args.tolerance is not None else settings.oracle_tolerance
    result = check_oracle_agreement(checks, tolerance)
    if not result.valid:
        logger.error(result.reason)
        return EXIT_ORACLE
    return EXIT_OK


def cmd_enumerate_compare(args, settings: Settings, fmt: _Formatter) -> int:
    f_name, g_name = args.pair
    tolerance = args.tolerance if args.tolerance is not None else settings.tie_tolerance
    budget = args.pair_budget if args.pair_budget is not None else settings.pair_budget
    jobs = args.jobs if args.jobs is not None else settings.jobs

    domain = count_fixed_row_sums(args.rows)
    n_pairs = domain * (domain - 1) // 2
    if n_pairs > budget:
        raise BudgetExceededError(f"{domain} matrices give {n_pairs} pairs, over the budget of {budget}")

    f_measure, g_measure = _ORIENTED[f_name], _ORIENTED[g_name]
    f_values: List[float] = []
    g_values: List[float] = []
    for matrix in enumerate_fixed_row_sums(args.rows):
        f_values.append(f_measure(matrix))
        g_values.append(g_measure(matrix))
    result = degrees(f_values, g_values, tie_tolerance=tolerance, jobs=jobs)

    _print_rows([
        ("domain_size", domain),
        ("pairs", result.n_pairs),
        ("P", result.p_count),
        ("Q", result.q_count),
        ("R", result.r_count),
        ("S", result.s_count),
        (f"discriminancy({f_name}/{g_name})", result.discriminancy),
        (f"consistency({f_name},{g_name})", result.consistency),
    ], fmt)
    return EXIT_OK


_EXPERIMENT_FLAGS = {
    "n": "n_matrices",
    "seed": "seed",
    "dim_min": "dim_min",
    "dim_max": "dim_max",
    "diag_max": "diag_max",
    "rho_min": "rho_min",
    "rho_max": "rho_max",
    "bootstrap_resamples": "bootstrap_resamples",
    "bootstrap_level": "bootstrap_level",
    "consistency_pairs": "consistency_pairs",
    "pair_budget": "pair_budget",
    "reservoir_size": "reservoir_size",
    "tolerance": "tie_tolerance",
}


def experiment_config(args, settings: Settings) -> ExperimentConfig:
    """Defaults, then settings, then --experiment-config, then flags."""
    data = {
        "seed": settings.default_seed,
        "tie_tolerance": settings.tie_tolerance,
        "pair_budget": settings.pair_budget,
        "bootstrap_resamples": settings.bootstrap_resamples,
    }
    if args.experiment_config:
        data.update(ExperimentConfig.from_yaml(args.experiment_config).to_dict())
    for flag, name in _EXPERIMENT_FLAGS.items():
        value = getattr(args, flag)
        if value is not None:
            data[name] = value
    return ExperimentConfig.from_dict(data)


def cmd_experiment(args, settings: Settings, fmt: _Formatter) -> int:
    config = experiment_config(args, settings)
    jobs = args.jobs if args.jobs is not None else settings.jobs
    runner = ExperimentRunner(config, jobs=jobs, chunk_size=args.chunk_size)
    summary = runner.run(args.records)
    if args.summary:
        write_summary(summary, args.summary)

    _print_rows([
        (name, value) for name, value in summary.to_dict().items()
        if name not in ("ratio_by_dimension", "config")
    ], fmt)
    table = dimension_table(summary)
    if not table.empty:
        print(table.to_string(float_format=fmt))

    result = check_sanity_band(summary)
    if not result.valid:
        raise SanityBandError(result.reason)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="YAML settings file (default: $CONFMEASURES_CONFIG)")
    common.add_argument("--log-level", default=argparse.SUPPRESS,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
                        help="logging level (default: $CONFMEASURES_LOG_LEVEL or INFO)")
    common.add_argument("--full-precision", action="store_true", default=argparse.SUPPRESS,
                        help="print floats with full precision instead of 7 significant digits")

    parser = argparse.ArgumentParser(
        prog="confmeasures",
        description="ACC, MCC, CEN and tMCC on confusion matrices, with analytic families, "
                    "pairwise measure comparison and a Monte-Carlo study.",
        parents=[common]
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", parents=[common], help="measures of one matrix CSV")
    compute.add_argument("matrix", help="CSV file: N lines of N nonnegative integers")
    compute.add_argument("--binary-closed-form", action="store_true",
                         help="also check the binary closed forms (2x2 input only)")
    compute.add_argument("--output", help="write the report as JSON to this path")
    compute.set_defaults(handler=cmd_compute)

    family = sub.add_parser("family", parents=[common], help="closed form vs direct value for a matrix family")
    family.add_argument("kind", choices=[k.value for k in FamilyKind])
    family.add_argument("--n", type=int, required=True, help="number of classes (>= 3)")
    family.add_argument("--a", type=int, help="A parameter (ZA, UNBALANCED)")
    family.add_argument("--t", type=int, help="diagonal value (DIAG_B)")
    family.add_argument("--f", type=int, help="off-diagonal value (DIAG_B, OFF_DIAGONAL)")
    family.add_argument("--tolerance", type=float, help="allowed |closed - direct| (default: settings, 1e-10)")
    family.set_defaults(handler=cmd_family)

    compare = sub.add_parser("enumerate-compare", parents=[common],
                             help="degrees of discriminancy/consistency over all matrices with given row sums")
    compare.add_argument("--rows", type=_parse_rows, required=True, help="row sums, e.g. 2,4,3")
    compare.add_argument("--pair", type=_parse_pair, default=("cen", "mcc"),
                         help=f"f-g with f, g in {', '.join(_ORIENTED)}; CEN and tMCC are negated")
    compare.add_argument("--tolerance", type=float, help="tie tolerance (default: settings, 1e-12)")
    compare.add_argument("--pair-budget", type=int, help="maximum number of pairs (default: settings, 1e8)")
    compare.add_argument("--jobs", type=int, help="worker threads (default: settings, 1)")
    compare.set_defaults(handler=cmd_enumerate_compare)

    experiment = sub.add_parser("experiment", parents=[common], help="Monte-Carlo study of tMCC vs k*CEN")
    experiment.add_argument("--n", type=int, help="number of matrices (default 200000)")
    experiment.add_argument("--seed", type=int, help="random seed (default: settings, 42)")
    experiment.add_argument("--dim-min", type=int, help="smallest dimension (default 3)")
    experiment.add_argument("--dim-max", type=int, help="largest dimension (default 30)")
    experiment.add_argument("--diag-max", type=int, help="largest diagonal entry (default 1000)")
    experiment.add_argument("--rho-min", type=float, help="lower bound of rho (default 0.01)")
    experiment.add_argument("--rho-max", type=float, help="upper bound of rho (default 1.0)")
    experiment.add_argument("--bootstrap-resamples", type=int, help="bootstrap resamples (default 10000)")
    experiment.add_argument("--bootstrap-level", type=float, help="confidence level (default 0.95)")
    experiment.add_argument("--consistency-pairs", type=int, help="sampled pairs above the budget (default 1e8)")
    experiment.add_argument("--pair-budget", type=int, help="largest exact pair count (default 1e8)")
    experiment.add_argument("--reservoir-size", type=int, help="records kept for pair statistics (default 200000)")
    experiment.add_argument("--tolerance", type=float, help="tie tolerance (default 1e-12)")
    experiment.add_argument("--jobs", type=int, help="worker processes (default: settings, 1)")
    experiment.add_argument("--chunk-size", type=int, default=1000, help="matrices per task (default 1000)")
    experiment.add_argument("--experiment-config", help="YAML experiment config or a previous summary")
    experiment.add_argument("--records", help="write per-matrix records CSV here")
    experiment.add_argument("--summary", help="write the JSON summary here")
    experiment.set_defaults(handler=cmd_experiment)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = load_settings(getattr(args, "config", None))
        setup_logging(getattr(args, "log_level", None) or settings.log_level)
        fmt = _Formatter(settings.significant_digits, getattr(args, "full_precision", False))
        return args.handler(args, settings, fmt)
    except BudgetExceededError as e:
        logger.error(f"Budget exceeded: {str(e)}")
        return EXIT_BUDGET
    except SanityBandError as e:
        logger.error(f"Sanity band failed: {str(e)}")
        return EXIT_SANITY
    except (ValidationError, DegenerateStatisticError) as e:
        logger.error(f"Invalid input: {str(e)}")
        return EXIT_VALIDATION
    except OSError as e:
        logger.error(f"I/O failure: {str(e)}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
