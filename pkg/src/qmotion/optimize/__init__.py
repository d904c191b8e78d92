"""Optimization families over control paths, and the comparison harness."""
from .hybrid import hybrid_optimize
from .local import local_optimize
from .model import (
    FAMILIES,
    OptimizationRun,
    OptimizerConfig,
    PathEncoding,
    TraceEntry,
    evaluate_path,
    read_trace_csv,
    trace_csv,
)
from .report import (
    ALIGNMENT_NOTE,
    ConvergenceReport,
    best_so_far,
    convergence_report,
    convergence_report_from_curves,
    crossover_index,
    extend_flat,
)
from .stochastic import stochastic_optimize

__all__ = [
    "ALIGNMENT_NOTE",
    "FAMILIES",
    "ConvergenceReport",
    "OptimizationRun",
    "OptimizerConfig",
    "PathEncoding",
    "TraceEntry",
    "best_so_far",
    "convergence_report",
    "convergence_report_from_curves",
    "crossover_index",
    "evaluate_path",
    "extend_flat",
    "hybrid_optimize",
    "local_optimize",
    "read_trace_csv",
    "stochastic_optimize",
    "trace_csv",
]
