"""Serial and schedule-parallel coordinate descent for the penalized objective.

Both solvers apply the same two closed-form updates.  For an off-diagonal
pair (r, s) the minimizer of the objective along omega_rs = omega_sr is

    soft(-(sum_{u != s} omega_ru T_su + sum_{u != r} omega_us T_ru), n * lam)
        / (T_rr + T_ss)

and each diagonal entry moves to the positive root of its stationarity
condition,

    omega_ii = (-a_i + sqrt(a_i^2 + 4 n T_ii)) / (2 T_ii),
    a_i = sum_{j != i} omega_ij T_ij.

cd_fit visits the strict upper triangle row-major with every update
immediately visible, then the diagonals in index order.  pcd_fit follows a
round schedule: pairs inside one round share no index, so their reads never
touch another pair's written cells and the whole round can run concurrently
against the shared iterate.  Convergence is declared when the entrywise max
change over one outer iteration drops below delta_tol; the parallel solver
computes that max by a halving tree reduction suited to concurrent hardware.
"""

import math
import time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._backend import get_backend
from .model import (
    DataMatrix,
    DimensionError,
    GramMatrix,
    PrecisionEstimate,
    SolverConfig,
    _max_abs_diff_arrays,
    _objective_arrays,
    compute_gram,
    edge_count,
)
from .schedule import IndexPair, Schedule, build_circle_schedule, validate_schedule


class NotConverged(RuntimeError):
    """Raised when the iteration cap is hit; carries the partial fit report."""

    def __init__(self, report):
        self.report = report
        super().__init__(
            f"no convergence after {report.iterations} outer iterations, "
            f"final delta {report.final_delta:.3e}"
        )


class ScheduleMismatch(ValueError):
    """The supplied schedule was built for a different problem size."""


class EmptyVector(ValueError):
    """Reduction over zero elements has no value."""


@dataclass(frozen=True)
class FitReport:
    """Everything a fit produced.

    objective_trace holds the objective after each completed outer
    iteration.  wall_time_per_iteration covers the update sweep plus the
    convergence metric; objective bookkeeping is excluded from the timing.
    """

    estimate: PrecisionEstimate
    iterations: int
    final_delta: float
    converged: bool
    objective_trace: tuple
    edge_count: int
    wall_time_per_iteration: tuple


# === scalar updates (reference definitions, also exposed for inspection) ===


def update_offdiagonal(
    estimate: PrecisionEstimate, gram: GramMatrix, r: int, s: int, lam: float
) -> float:
    """New value for the pair (r, s), 0-based, without mutating the estimate.

    The soft threshold applied is n * lam, matching the objective's penalty
    weight.
    """
    p = estimate.p
    if not (0 <= r < p and 0 <= s < p):
        raise IndexError(f"indices ({r}, {s}) out of range for p={p}")
    if r == s:
        raise ValueError("off-diagonal update needs r != s")
    if estimate.p != gram.p:
        raise DimensionError("estimate and gram sizes differ")
    om, t = estimate.omega, gram.t
    denom = t[r, r] + t[s, s]
    assert denom > 0.0, "Gram diagonal invariant violated"
    from ._pykernels import _offdiag_value

    return float(_offdiag_value(om, t, r, s, float(gram.n) * lam))


def update_diagonal(estimate: PrecisionEstimate, gram: GramMatrix, i: int) -> float:
    """New value for diagonal entry i, 0-based, without mutating the estimate."""
    p = estimate.p
    if not 0 <= i < p:
        raise IndexError(f"index {i} out of range for p={p}")
    if estimate.p != gram.p:
        raise DimensionError("estimate and gram sizes differ")
    from ._pykernels import _diag_value

    return float(_diag_value(estimate.omega, gram.t, i, float(gram.n)))


# === concurrency bookkeeping ===


def read_write_sets(p: int, pair: IndexPair):
    """Cells a pair update reads and writes, as sets of 1-based (i, j).

    The update for (r, s) reads row r without column s and column s without
    row r (diagonal cells included), and writes the two mirrored cells.
    Two updates are safe to run concurrently when neither writes a cell the
    other reads or writes; pairs sharing no index always qualify.
    """
    r, s = pair.r, pair.s
    if not (1 <= r < s <= p):
        raise IndexError(f"pair ({r}, {s}) out of range for p={p}")
    read = {(r, u) for u in range(1, p + 1) if u != s}
    read |= {(u, s) for u in range(1, p + 1) if u != r}
    write = {(r, s), (s, r)}
    return read, write


def cyclic_max_reduce(d) -> float:
    """Max of |d_j| by halving rounds, the reduction a parallel sweep would use.

    Each level folds the upper half onto the lower half with pairwise
    max-of-absolutes; entries past the fold width carry over unchanged.
    Exactly equal to a linear scan since max and abs introduce no rounding.
    """
    work = np.array(d, dtype=np.float64, copy=True).ravel()
    m = work.shape[0]
    if m == 0:
        raise EmptyVector("cannot reduce an empty vector")
    if m == 1:
        return float(abs(work[0]))
    z = (m - 1).bit_length()  # ceil(log2(m))
    width = 1 << (z - 1)
    count = min(width, m - width)
    work[:count] = np.maximum(np.abs(work[:count]), np.abs(work[width : width + count]))
    for q in range(z - 2, -1, -1):
        width = 1 << q
        work[:width] = np.maximum(
            np.abs(work[:width]), np.abs(work[width : 2 * width])
        )
    return float(work[0])


def _flatten_schedule(schedule: Schedule):
    """Flatten non-phantom pairs round by round into 0-based index arrays."""
    rs, ss, offsets = [], [], [0]
    for k in range(len(schedule.rounds)):
        for pr in schedule.active_pairs(k):
            rs.append(pr.r - 1)
            ss.append(pr.s - 1)
        offsets.append(len(rs))
    return (
        np.asarray(rs, dtype=np.intp),
        np.asarray(ss, dtype=np.intp),
        np.asarray(offsets, dtype=np.intp),
    )


@lru_cache(maxsize=32)
def _triu_rows_cols(p):
    iu = np.triu_indices(p)
    return iu[0], iu[1]


def _vech(a):
    rows, cols = _triu_rows_cols(a.shape[0])
    return a[rows, cols]


def diff_vector(a: PrecisionEstimate, b: PrecisionEstimate):
    """Stacked upper-triangle difference, length p (p + 1) / 2.

    This is the vector the parallel solver feeds to cyclic_max_reduce when
    measuring the change across one outer iteration.
    """
    if a.p != b.p:
        raise DimensionError(f"shapes differ: p={a.p} vs p={b.p}")
    return _vech(a.omega - b.omega)


# === drivers ===


def _as_gram(x_or_gram):
    if isinstance(x_or_gram, GramMatrix):
        return x_or_gram
    if isinstance(x_or_gram, DataMatrix):
        return compute_gram(x_or_gram)
    raise TypeError("expected a DataMatrix or GramMatrix")


def _finish(omega, iterations, delta, converged, trace, times):
    est = PrecisionEstimate(omega)
    return FitReport(
        estimate=est,
        iterations=iterations,
        final_delta=delta,
        converged=converged,
        objective_trace=tuple(trace),
        edge_count=edge_count(est),
        wall_time_per_iteration=tuple(times),
    )


def cd_fit(x_or_gram, config: SolverConfig, backend=None) -> FitReport:
    """Serial cyclic coordinate descent.

    Runs full sweeps until the entrywise max change of an outer iteration
    drops below config.delta_tol.  Raises NotConverged (carrying the partial
    report) when max_outer_iterations is exhausted first.
    """
    gram = _as_gram(x_or_gram)
    be = get_backend(backend)
    t, n, p = gram.t, float(gram.n), gram.p
    omega = config.initial_omega(p)
    trace, times = [], []
    delta = math.inf
    for it in range(1, config.max_outer_iterations + 1):
        snapshot = omega.copy()
        tic = time.perf_counter()
        be.cd_sweep(omega, t, n, n * config.lam)
        delta = _max_abs_diff_arrays(omega, snapshot)
        times.append(time.perf_counter() - tic)
        trace.append(_objective_arrays(omega, t, n, config.lam))
        if delta < config.delta_tol:
            return _finish(omega, it, delta, True, trace, times)
    raise NotConverged(
        _finish(omega, config.max_outer_iterations, delta, False, trace, times)
    )


def pcd_fit(
    x_or_gram, config: SolverConfig, schedule: Schedule = None, backend=None
) -> FitReport:
    """Parallel coordinate descent over a round schedule.

    Each outer iteration runs every schedule round as a batch of
    simultaneous pair updates with a barrier between rounds, then updates
    all diagonals, then measures the max change by cyclic_max_reduce over
    the stacked upper triangle.  Produces bitwise identical iterates for
    every worker count.
    """
    gram = _as_gram(x_or_gram)
    be = get_backend(backend)
    t, n, p = gram.t, float(gram.n), gram.p
    if schedule is None:
        schedule = build_circle_schedule(p)
    else:
        if schedule.p != p:
            raise ScheduleMismatch(
                f"schedule is for p={schedule.p} but the problem has p={p}"
            )
        report = validate_schedule(schedule)
        if not report.ok:
            raise ScheduleMismatch(f"invalid schedule: {report.message}")
    rs, ss, offsets = _flatten_schedule(schedule)
    omega = config.initial_omega(p)
    trace, times = [], []
    delta = math.inf
    for it in range(1, config.max_outer_iterations + 1):
        snapshot = omega.copy()
        tic = time.perf_counter()
        be.pcd_sweep(omega, t, n, n * config.lam, rs, ss, offsets,
                     config.workers)
        delta = cyclic_max_reduce(_vech(omega - snapshot))
        times.append(time.perf_counter() - tic)
        trace.append(_objective_arrays(omega, t, n, config.lam))
        if delta < config.delta_tol:
            return _finish(omega, it, delta, True, trace, times)
    raise NotConverged(
        _finish(omega, config.max_outer_iterations, delta, False, trace, times)
    )
