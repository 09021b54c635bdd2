"""Problem data, estimate containers, and the penalized pseudo-likelihood objective.

The estimator minimizes, over symmetric matrices with positive diagonal,

    L(omega; lam) = -n * sum_i log(omega_ii)
                    + 1/2 * sum_k sum_i (omega_ii X_ki + sum_{j != i} omega_ij X_kj)^2
                    + n * lam * sum_{i < j} |omega_ij|

for an n x p data matrix X.  Both the log-barrier and the quadratic term
grow linearly in n, so the penalty weight is scaled by n as well: a given
lam then selects a comparable sparsity level at every sample size, and the
per-coordinate soft threshold is n * lam.  Every solver update depends on
X only through the Gram matrix T = X^T X, so this module owns the
sufficient-statistic construction along with the scalar primitives (soft
threshold, objective, convergence metric, stationarity check) shared by
the serial and parallel solvers.
"""

from dataclasses import dataclass

import numpy as np


class DimensionError(ValueError):
    """Input shape is outside the supported range."""


class ZeroVarianceColumn(ValueError):
    """A data column has an exactly zero sum of squares."""

    def __init__(self, column):
        self.column = column
        super().__init__(f"column {column} has zero sum of squares")


def _as_matrix(values):
    a = np.ascontiguousarray(values, dtype=np.float64)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-d array, got ndim={a.ndim}")
    return a


# === containers ===


@dataclass(frozen=True)
class DataMatrix:
    """An n x p sample matrix, rows are observations.

    `centered` declares that every column sums to zero; the constructor
    checks the claim to a tolerance of 1e-9 * n per column.
    """

    values: np.ndarray
    centered: bool = False

    def __post_init__(self):
        a = _as_matrix(self.values)
        object.__setattr__(self, "values", a)
        n, p = a.shape
        if n < 1:
            raise DimensionError("need at least one observation")
        if p < 2:
            raise DimensionError("need at least two variables")
        if self.centered:
            worst = float(np.max(np.abs(a.sum(axis=0))))
            if worst > 1e-9 * n:
                raise ValueError(
                    f"marked centered but a column sums to {worst:.3e}"
                )

    @property
    def n(self):
        return self.values.shape[0]

    @property
    def p(self):
        return self.values.shape[1]


@dataclass(frozen=True)
class GramMatrix:
    """T = X^T X for an n x p data matrix, the solver's only view of the data."""

    t: np.ndarray
    n: int

    def __post_init__(self):
        t = _as_matrix(self.t)
        object.__setattr__(self, "t", t)
        if t.shape[0] != t.shape[1] or t.shape[0] < 2:
            raise DimensionError(f"T must be square with p >= 2, got {t.shape}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not np.array_equal(t, t.T):
            raise ValueError("T must be exactly symmetric")
        for i in range(t.shape[0]):
            if not t[i, i] > 0.0:
                raise ZeroVarianceColumn(i)

    @property
    def p(self):
        return self.t.shape[0]


@dataclass(frozen=True)
class PrecisionEstimate:
    """A symmetric estimate with strictly positive diagonal."""

    omega: np.ndarray

    def __post_init__(self):
        om = _as_matrix(self.omega)
        object.__setattr__(self, "omega", om)
        if om.shape[0] != om.shape[1] or om.shape[0] < 2:
            raise DimensionError(f"estimate must be square with p >= 2, got {om.shape}")
        if not np.array_equal(om, om.T):
            raise ValueError("estimate must be exactly symmetric")
        if not np.all(np.diag(om) > 0.0):
            raise ValueError("estimate must have strictly positive diagonal")

    @property
    def p(self):
        return self.omega.shape[0]

    @staticmethod
    def identity(p):
        return PrecisionEstimate(np.eye(p))


@dataclass(frozen=True)
class SolverConfig:
    """Knobs shared by both solvers.

    init is either "identity" or a PrecisionEstimate to start from; workers
    only affects the parallel solver's compiled backend (values never depend
    on it).
    """

    lam: float
    delta_tol: float = 1e-5
    max_outer_iterations: int = 200
    init: object = "identity"
    workers: int = 1

    def __post_init__(self):
        if not self.lam >= 0.0:
            raise ValueError("lam must be nonnegative")
        if not self.delta_tol > 0.0:
            raise ValueError("delta_tol must be positive")
        if self.max_outer_iterations < 1:
            raise ValueError("max_outer_iterations must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.init != "identity" and not isinstance(self.init, PrecisionEstimate):
            raise ValueError('init must be "identity" or a PrecisionEstimate')

    def initial_omega(self, p):
        """Fresh working array for a problem of size p."""
        if self.init == "identity":
            return np.eye(p)
        if self.init.p != p:
            raise DimensionError(
                f"init has p={self.init.p} but the problem has p={p}"
            )
        return self.init.omega.copy()


@dataclass(frozen=True)
class OptimalityReport:
    """Worst stationarity violation over all coordinates (0-based indices)."""

    worst_violation: float
    worst_coordinate: tuple
    eps: float
    ok: bool


# === operations ===


def center_columns(x: DataMatrix) -> DataMatrix:
    """Subtract each column mean.  Input already flagged centered is returned as is."""
    if x.centered:
        return x
    means = x.values.mean(axis=0)
    return DataMatrix(x.values - means, centered=True)


def compute_gram(x: DataMatrix) -> GramMatrix:
    """Form T = X^T X, symmetrized so T is exactly symmetric bitwise."""
    raw = x.values.T @ x.values
    t = 0.5 * (raw + raw.T)
    for i in range(x.p):
        if t[i, i] == 0.0:
            raise ZeroVarianceColumn(i)
    return GramMatrix(t=t, n=x.n)


def soft_threshold(x: float, tau: float) -> float:
    """sign(x) * max(|x| - tau, 0), the scalar shrinkage used by every update."""
    if tau < 0.0:
        raise ValueError("tau must be nonnegative")
    a = abs(x) - tau
    if a <= 0.0:
        return 0.0
    return a if x > 0.0 else -a


def _objective_arrays(om, t, n, lam):
    diag = np.diag(om)
    logdet_part = -float(n) * float(np.sum(np.log(diag)))
    quad = 0.5 * float(np.einsum("ij,ij->", om @ t, om))
    penalty = float(n) * lam * float(
        np.sum(np.abs(om[np.triu_indices(om.shape[0], k=1)]))
    )
    return logdet_part + quad + penalty


def objective(estimate: PrecisionEstimate, gram: GramMatrix, lam: float) -> float:
    """Penalized pseudo-likelihood value through the Gram identity.

    The quadratic term is computed as 1/2 * <omega T, omega>, which equals
    the per-observation residual form of the objective exactly in real
    arithmetic.
    """
    if lam < 0.0:
        raise ValueError("lam must be nonnegative")
    if estimate.p != gram.p:
        raise DimensionError(
            f"estimate has p={estimate.p} but gram has p={gram.p}"
        )
    return _objective_arrays(estimate.omega, gram.t, gram.n, lam)


def max_abs_diff(a: PrecisionEstimate, b: PrecisionEstimate) -> float:
    """Entrywise max-absolute difference, one sequential pass."""
    if a.p != b.p:
        raise DimensionError(f"shapes differ: p={a.p} vs p={b.p}")
    return _max_abs_diff_arrays(a.omega, b.omega)


def _max_abs_diff_arrays(a, b):
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def edge_count(estimate: PrecisionEstimate) -> int:
    """Number of exactly nonzero entries in the strict upper triangle."""
    p = estimate.p
    iu = np.triu_indices(p, k=1)
    return int(np.count_nonzero(estimate.omega[iu]))


def check_optimality(
    estimate: PrecisionEstimate, gram: GramMatrix, lam: float, eps: float = 1e-6
) -> OptimalityReport:
    """Subgradient stationarity check for the penalized objective.

    With M = omega T and the effective penalty weight w = n * lam, the
    smooth part has partials M_ii - n / omega_ii on the diagonal and
    M_rs + M_sr on off-diagonal pairs.  A nonzero omega_rs must satisfy
    |grad + w * sign(omega_rs)| <= eps, a zero entry |grad| <= w + eps;
    diagonals must satisfy |grad| <= eps.
    """
    if estimate.p != gram.p:
        raise DimensionError(
            f"estimate has p={estimate.p} but gram has p={gram.p}"
        )
    om = estimate.omega
    p = estimate.p
    weight = float(gram.n) * lam
    m = om @ gram.t
    grad_diag = np.diag(m) - float(gram.n) / np.diag(om)
    grad_off = m + m.T
    viol = np.where(
        om != 0.0,
        np.abs(grad_off + weight * np.sign(om)),
        np.maximum(np.abs(grad_off) - weight, 0.0),
    )
    np.fill_diagonal(viol, np.abs(grad_diag))
    flat_idx = int(np.argmax(viol))
    i, j = divmod(flat_idx, p)
    worst = float(viol[i, j])
    coord = (i, j) if i <= j else (j, i)
    return OptimalityReport(
        worst_violation=worst, worst_coordinate=coord, eps=eps, ok=worst <= eps
    )
