"""Independent reference computations the tests compare the package against.

Everything here is deliberately written through a different route than the
implementation: the objective is evaluated on raw data residuals instead of
the Gram identity, closed-form updates are checked against derivative-free
1-D golden-section minimization of that objective, gradients come from
central finite differences, and the max reduction is checked against a
plain sequential scan.
"""

import numpy as np

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def sample_objective(om, x, lam):
    """Penalized objective straight from the per-observation residuals."""
    n, p = x.shape
    val = -float(n) * float(np.sum(np.log(np.diag(om))))
    for i in range(p):
        resid = om[i, i] * x[:, i].copy()
        for j in range(p):
            if j != i:
                resid += om[i, j] * x[:, j]
        val += 0.5 * float(resid @ resid)
    pen = 0.0
    for i in range(p):
        for j in range(i + 1, p):
            pen += abs(om[i, j])
    return val + float(n) * lam * pen


def scan_max_abs(values):
    """Sequential linear scan for max |v|."""
    worst = 0.0
    for v in np.asarray(values).ravel():
        a = abs(float(v))
        if a > worst:
            worst = a
    return worst


def golden_min(f, lo, hi, iters=140):
    """Golden-section minimizer of a unimodal f on [lo, hi]."""
    a, b = float(lo), float(hi)
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def offdiag_minimizer_numeric(om, x, lam, r, s):
    """Numerically minimize the objective along omega_rs = omega_sr."""
    t = x.T @ x
    p = om.shape[0]
    denom = t[r, r] + t[s, s]
    bound = (
        2.0 * p * float(np.max(np.abs(om))) * float(np.max(np.abs(t))) / denom
        + float(np.max(np.abs(om)))
        + 1.0
    )

    def f(v):
        work = om.copy()
        work[r, s] = work[s, r] = v
        return sample_objective(work, x, lam)

    return golden_min(f, -bound, bound)


def diag_minimizer_numeric(om, x, lam, i):
    """Numerically minimize the objective along omega_ii > 0."""
    t = x.T @ x
    n = x.shape[0]
    a = float(np.dot(om[i], t[i])) - om[i, i] * t[i, i]
    hi = abs(a) / t[i, i] + np.sqrt(n / t[i, i]) + 1.0

    def f(w):
        work = om.copy()
        work[i, i] = w
        return sample_objective(work, x, lam)

    return golden_min(f, 1e-9, hi)


def fd_gradient(om, x, lam, step=1e-6):
    """Central-difference gradient of the smooth part of the objective.

    Off-diagonal coordinates move the mirrored pair together, matching the
    symmetric parameterization.  The penalty is excluded (lam enters the
    subgradient condition separately), so this is evaluated at lam = 0.
    """
    p = om.shape[0]
    grad = np.zeros((p, p))
    for i in range(p):
        for j in range(i, p):
            plus = om.copy()
            minus = om.copy()
            plus[i, j] += step
            minus[i, j] -= step
            if i != j:
                plus[j, i] += step
                minus[j, i] -= step
            grad[i, j] = (
                sample_objective(plus, x, 0.0) - sample_objective(minus, x, 0.0)
            ) / (2.0 * step)
            grad[j, i] = grad[i, j]
    return grad


def subgradient_violations(om, grad, weight):
    """Worst-case stationarity violation per coordinate given a gradient."""
    p = om.shape[0]
    viol = np.zeros((p, p))
    for i in range(p):
        viol[i, i] = abs(grad[i, i])
        for j in range(i + 1, p):
            g = grad[i, j]
            if om[i, j] != 0.0:
                v = abs(g + weight * np.sign(om[i, j]))
            else:
                v = max(abs(g) - weight, 0.0)
            viol[i, j] = viol[j, i] = v
    return viol


def random_symmetric_estimate(rng, p):
    """A generic symmetric matrix with positive diagonal, some exact zeros."""
    a = rng.uniform(-0.6, 0.6, size=(p, p))
    a = 0.5 * (a + a.T)
    mask = rng.random((p, p)) < 0.3
    mask = np.triu(mask, 1)
    a[mask] = 0.0
    a[mask.T] = 0.0
    np.fill_diagonal(a, rng.uniform(0.4, 2.5, size=p))
    return a
