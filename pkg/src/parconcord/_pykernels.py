"""Pure-numpy update kernels, the fallback when the compiled extension is absent.

Same contract as _ckernels: sweeps mutate omega in place and keep it exactly
symmetric.  The parallel-schedule sweep computes each round's values before
writing any of them, which matches what concurrent execution of the round
would produce because pairs inside a round never read cells the round writes.
"""

import math

import numpy as np

from .model import soft_threshold

name = "python"


def _offdiag_value(om, t, r, s, shrink):
    # Closed-form coordinate minimizer for the symmetric pair (r, s).
    s1 = float(np.dot(om[r], t[s]))
    s2 = float(np.dot(om[s], t[r]))
    num = -(s1 + s2 - om[r, s] * (t[s, s] + t[r, r]))
    return soft_threshold(num, shrink) / (t[r, r] + t[s, s])


def _diag_value(om, t, i, n):
    # Positive root of the diagonal stationarity condition.
    a = float(np.dot(om[i], t[i])) - om[i, i] * t[i, i]
    return (-a + math.sqrt(a * a + 4.0 * n * t[i, i])) / (2.0 * t[i, i])


def cd_sweep(om, t, n, shrink):
    """One serial cycle: upper triangle row-major, then all diagonals."""
    p = om.shape[0]
    for r in range(p):
        for s in range(r + 1, p):
            v = _offdiag_value(om, t, r, s, shrink)
            om[r, s] = v
            om[s, r] = v
    for i in range(p):
        om[i, i] = _diag_value(om, t, i, n)


def pcd_sweep(om, t, n, shrink, rs, ss, offsets, workers):
    """One schedule cycle: rounds of simultaneous pair updates, then diagonals.

    rs/ss hold 0-based pair indices flattened round by round, offsets the
    round boundaries.  workers is accepted for signature parity with the
    compiled backend; values do not depend on it.
    """
    nrounds = offsets.shape[0] - 1
    for k in range(nrounds):
        lo, hi = int(offsets[k]), int(offsets[k + 1])
        vals = [
            _offdiag_value(om, t, rs[idx], ss[idx], shrink) for idx in range(lo, hi)
        ]
        for idx in range(lo, hi):
            v = vals[idx - lo]
            om[rs[idx], ss[idx]] = v
            om[ss[idx], rs[idx]] = v
    p = om.shape[0]
    diag = [_diag_value(om, t, i, n) for i in range(p)]
    for i in range(p):
        om[i, i] = diag[i]


def u2_sweep(om, t, n, shrink, rs, ss):
    """Serial replay of the flattened schedule with immediate writes, then diagonals."""
    for idx in range(rs.shape[0]):
        v = _offdiag_value(om, t, rs[idx], ss[idx], shrink)
        om[rs[idx], ss[idx]] = v
        om[ss[idx], rs[idx]] = v
    p = om.shape[0]
    for i in range(p):
        om[i, i] = _diag_value(om, t, i, n)
