"""Synthetic ground-truth precision matrices and Gaussian sampling.

Two truth families:

* ar2: a banded precision with 0.45 on the first off-diagonal, 0.40 on the
  second, unit diagonal.  Positive definite for every p (the symbol
  1 + 0.9 cos(x) + 0.8 cos(2x) is bounded below by about 0.0735).

* scale_free: a preferential-attachment tree whose attachment weight is
  degree + (alpha - 3), giving asymptotic degree exponent alpha; edge
  weights are uniform on [-1, -0.5] union [0.5, 1], scaled by
  1.25 * sqrt(r_i * r_j) of the row absolute sums, symmetrized, floored to
  magnitude 0.1 on the support, unit diagonal.  The geometric-mean scaling
  bounds the off-diagonal spectral norm by 0.8 before flooring, and a
  finite-size degree cap keeps the magnitude floor from breaking positive
  definiteness at hub nodes (an uncapped hub of degree d contributes a star
  of norm at least 0.1 * sqrt(d)).

Sampling draws standard normal rows and solves against the Cholesky factor
of the truth, so the row covariance is exactly the truth's inverse.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .model import DataMatrix, DimensionError, PrecisionEstimate
from .schedule import IndexPair


class NotPositiveDefinite(ValueError):
    """The requested truth has no Cholesky factorization."""


# Attachment stops at this degree; see the module docstring.
MAX_HUB_DEGREE = 40


def _truth_support(om):
    p = om.shape[0]
    return frozenset(
        IndexPair(i + 1, j + 1)
        for i in range(p)
        for j in range(i + 1, p)
        if om[i, j] != 0.0
    )


@dataclass(frozen=True)
class TruthModel:
    """A ground-truth precision with its exact sparsity support (1-based pairs)."""

    kind: str
    p: int
    omega_true: PrecisionEstimate
    support: frozenset

    @property
    def edge_total(self):
        return len(self.support)


def ar2_precision(p: int) -> TruthModel:
    """Second-order band truth: omega_ii = 1, first band 0.45, second band 0.40."""
    if p < 3:
        raise DimensionError("ar2 truth needs p >= 3")
    om = np.eye(p)
    for i in range(p - 1):
        om[i, i + 1] = om[i + 1, i] = 0.45
    for i in range(p - 2):
        om[i, i + 2] = om[i + 2, i] = 0.40
    return TruthModel(
        kind="ar2",
        p=p,
        omega_true=PrecisionEstimate(om),
        support=_truth_support(om),
    )


def _attachment_edges(p, alpha, rng):
    """Preferential-attachment tree with attachment weight degree + (alpha - 3)."""
    a0 = alpha - 3.0
    deg = np.zeros(p)
    edges = [(0, 1)]
    deg[0] = deg[1] = 1.0
    for v in range(2, p):
        w = deg[:v] + a0
        w[deg[:v] >= MAX_HUB_DEGREE] = 0.0
        cum = np.cumsum(w)
        assert cum[-1] > 0.0, "attachment weights exhausted"
        u = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
        edges.append((u, v))
        deg[u] += 1.0
        deg[v] += 1.0
    return edges


def scale_free_precision(p: int, alpha: float = 2.3, seed: int = 0) -> TruthModel:
    """Scale-free truth on a preferential-attachment tree.

    Deterministic in (p, alpha, seed); topology and edge weights use
    independent streams spawned from the seed.
    """
    if p < 3:
        raise DimensionError("scale-free truth needs p >= 3")
    if not alpha > 1.0:
        raise ValueError("alpha must exceed 1")
    graph_seed, weight_seed = np.random.SeedSequence(seed).spawn(2)
    rng_graph = np.random.default_rng(graph_seed)
    rng_weight = np.random.default_rng(weight_seed)

    edges = _attachment_edges(p, alpha, rng_graph)
    u = np.zeros((p, p))
    mags = rng_weight.uniform(0.5, 1.0, size=len(edges))
    signs = rng_weight.choice([-1.0, 1.0], size=len(edges))
    for (i, j), m, s in zip(edges, mags, signs):
        u[i, j] = u[j, i] = m * s

    r = np.abs(u).sum(axis=1)  # positive: every node of a tree has an edge
    b = u / (1.25 * np.sqrt(np.outer(r, r)))
    b = 0.5 * (b + b.T)
    support_mask = u != 0.0
    small = support_mask & (np.abs(b) < 0.1)
    b[small] = 0.1 * np.sign(b[small])
    np.fill_diagonal(b, 1.0)
    return TruthModel(
        kind="scale_free",
        p=p,
        omega_true=PrecisionEstimate(b),
        support=_truth_support(b),
    )


def sample_mvn(truth: TruthModel, n: int, seed: int = 0) -> DataMatrix:
    """n rows from the zero-mean Gaussian whose precision is the truth.

    Draws Z with standard normal entries and solves L^T X^T = Z^T for the
    Cholesky factor L of the truth, giving covariance exactly inv(truth).
    Raises NotPositiveDefinite when the truth has no Cholesky factor.
    """
    if n < 1:
        raise DimensionError("need at least one sample")
    om = truth.omega_true.omega
    try:
        chol = np.linalg.cholesky(om)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(
            f"truth of kind {truth.kind!r} with p={truth.p} is not positive definite"
        ) from exc
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, truth.p))
    x = solve_triangular(chol, z.T, lower=True, trans="T").T
    return DataMatrix(np.ascontiguousarray(x), centered=False)
