# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled update kernels with OpenMP round parallelism.

Same contract as _pykernels: sweeps mutate omega in place and keep it
exactly symmetric.  Pairs inside one schedule round touch disjoint cells,
so the parallel loop writes straight into the shared iterate; every thread
count produces bitwise identical results because each pair's value is
computed by the same scalar kernel from cells no other pair in the round
writes.
"""

from cython.parallel cimport prange
from libc.math cimport fabs, sqrt

name = "compiled"


cdef inline double _soft(double x, double tau) nogil:
    cdef double a = fabs(x) - tau
    if a <= 0.0:
        return 0.0
    return a if x > 0.0 else -a


cdef inline double _offdiag_value(double[:, ::1] om, double[:, ::1] t,
                                  Py_ssize_t r, Py_ssize_t s, double shrink) nogil:
    # Closed-form coordinate minimizer for the symmetric pair (r, s).
    cdef Py_ssize_t p = om.shape[0]
    cdef Py_ssize_t u
    cdef double s1 = 0.0
    cdef double s2 = 0.0
    cdef double num
    for u in range(p):
        s1 += om[r, u] * t[s, u]
    for u in range(p):
        s2 += om[s, u] * t[r, u]
    num = -(s1 + s2 - om[r, s] * (t[s, s] + t[r, r]))
    return _soft(num, shrink) / (t[r, r] + t[s, s])


cdef inline double _diag_value(double[:, ::1] om, double[:, ::1] t,
                               Py_ssize_t i, double n) nogil:
    # Positive root of the diagonal stationarity condition.
    cdef Py_ssize_t p = om.shape[0]
    cdef Py_ssize_t u
    cdef double a = 0.0
    for u in range(p):
        a += om[i, u] * t[i, u]
    a -= om[i, i] * t[i, i]
    return (-a + sqrt(a * a + 4.0 * n * t[i, i])) / (2.0 * t[i, i])


def cd_sweep(double[:, ::1] om, double[:, ::1] t, double n, double shrink):
    """One serial cycle: upper triangle row-major, then all diagonals."""
    cdef Py_ssize_t p = om.shape[0]
    cdef Py_ssize_t r, s, i
    cdef double v
    with nogil:
        for r in range(p):
            for s in range(r + 1, p):
                v = _offdiag_value(om, t, r, s, shrink)
                om[r, s] = v
                om[s, r] = v
        for i in range(p):
            om[i, i] = _diag_value(om, t, i, n)


def pcd_sweep(double[:, ::1] om, double[:, ::1] t, double n, double shrink,
              Py_ssize_t[::1] rs, Py_ssize_t[::1] ss,
              Py_ssize_t[::1] offsets, int workers):
    """One schedule cycle: rounds of concurrent pair updates, then diagonals.

    rs/ss hold 0-based pair indices flattened round by round, offsets the
    round boundaries.  Each parallel region ends with a barrier, so a round
    is complete before the next one starts.
    """
    cdef Py_ssize_t nrounds = offsets.shape[0] - 1
    cdef Py_ssize_t p = om.shape[0]
    cdef Py_ssize_t k, idx, lo, hi, i
    cdef double v
    for k in range(nrounds):
        lo = offsets[k]
        hi = offsets[k + 1]
        if workers > 1:
            for idx in prange(lo, hi, nogil=True, schedule="static",
                              num_threads=workers):
                v = _offdiag_value(om, t, rs[idx], ss[idx], shrink)
                om[rs[idx], ss[idx]] = v
                om[ss[idx], rs[idx]] = v
        else:
            with nogil:
                for idx in range(lo, hi):
                    v = _offdiag_value(om, t, rs[idx], ss[idx], shrink)
                    om[rs[idx], ss[idx]] = v
                    om[ss[idx], rs[idx]] = v
    if workers > 1:
        for i in prange(p, nogil=True, schedule="static", num_threads=workers):
            om[i, i] = _diag_value(om, t, i, n)
    else:
        with nogil:
            for i in range(p):
                om[i, i] = _diag_value(om, t, i, n)


def u2_sweep(double[:, ::1] om, double[:, ::1] t, double n, double shrink,
             Py_ssize_t[::1] rs, Py_ssize_t[::1] ss):
    """Serial replay of the flattened schedule with immediate writes, then diagonals."""
    cdef Py_ssize_t m = rs.shape[0]
    cdef Py_ssize_t p = om.shape[0]
    cdef Py_ssize_t idx, i
    cdef double v
    with nogil:
        for idx in range(m):
            v = _offdiag_value(om, t, rs[idx], ss[idx], shrink)
            om[rs[idx], ss[idx]] = v
            om[ss[idx], rs[idx]] = v
        for i in range(p):
            om[i, i] = _diag_value(om, t, i, n)
