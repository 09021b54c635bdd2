"""Sparse precision matrix estimation by penalized pseudo-likelihood
coordinate descent, with a parallel solver scheduled by round-robin edge
coloring of the complete variable graph."""

from ._backend import HAVE_COMPILED, available_backends, default_backend_name, get_backend
from .bench import BenchReport, BenchRow, run_bench
from .datagen import (
    NotPositiveDefinite,
    TruthModel,
    ar2_precision,
    sample_mvn,
    scale_free_precision,
)
from .fileio import FileFormatError, read_estimate, read_problem, write_estimate, write_problem
from .model import (
    DataMatrix,
    DimensionError,
    GramMatrix,
    OptimalityReport,
    PrecisionEstimate,
    SolverConfig,
    ZeroVarianceColumn,
    center_columns,
    check_optimality,
    compute_gram,
    edge_count,
    max_abs_diff,
    objective,
    soft_threshold,
)
from .schedule import (
    IndexPair,
    Schedule,
    ValidationReport,
    brute_force_chromatic_index,
    build_circle_schedule,
    format_rounds,
    validate_schedule,
)
from .solver import (
    EmptyVector,
    FitReport,
    NotConverged,
    ScheduleMismatch,
    cd_fit,
    cyclic_max_reduce,
    diff_vector,
    pcd_fit,
    read_write_sets,
    update_diagonal,
    update_offdiagonal,
)

__version__ = "0.1.0"
