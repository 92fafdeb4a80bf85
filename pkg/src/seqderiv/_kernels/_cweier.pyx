# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for Weierstrass-type cosine series.

Same contract as the pure-Python kernel: the phase b^n * x is reduced
mod 2 exactly in integer arithmetic.  Here the masked products run in
128-bit registers, which covers every x whose scaled-odd form m * 2^E
has -E + 1 <= 128 (all |x| down to about 1e-22); anything smaller falls
back to the big-integer path, flagged through a NaN sentinel that the
series itself can never produce.
"""

import numpy as np

from libc.math cimport M_PI, NAN, cos, fabs, frexp, isnan, ldexp

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"


cdef double _kahan_const(double[::1] apows):
    cdef double s = 0.0, c = 0.0, y, u
    cdef Py_ssize_t n
    for n in range(apows.shape[0]):
        y = apows[n] - c
        u = s + y
        c = (u - s) - y
        s = u
    return s


cdef double _one(double x, long long b, int n_terms,
                 double[::1] apows, double splus):
    cdef int e, E, kp1, n
    cdef long long m
    cdef double fr, y, term, s, c, t, u
    cdef u128 mask, mm, bp, r
    if x == 0.0:
        return splus
    fr = frexp(fabs(x), &e)
    m = <long long>ldexp(fr, 53)
    E = e - 53
    while (m & 1) == 0:
        m >>= 1
        E += 1
    if E >= 1:
        return splus       # phase is an even integer: every cos is +1
    if E == 0:
        return -splus      # phase is an odd integer: every cos is -1
    kp1 = 1 - E
    if kp1 > 128:
        return NAN         # caller reroutes to the big-integer kernel
    if kp1 == 128:
        mask = ~(<u128>0)
    else:
        mask = ((<u128>1) << kp1) - 1
    mm = (<u128>m) & mask
    bp = <u128>1
    s = 0.0
    c = 0.0
    for n in range(n_terms):
        r = (bp * mm) & mask
        y = ldexp(<double>r, E)
        if y > 1.0:
            y = 2.0 - y
        term = apows[n] * cos(M_PI * y)
        t = term - c
        u = s + t
        c = (u - s) - t
        s = u
        bp = (bp * <u128>b) & mask
    return s


def weier_many(xs, double a, long long b, int n_terms):
    """Vectorized W(x) over an array of points; see the pure kernel for
    the phase-reduction contract."""
    if n_terms < 1:
        raise ValueError("n_terms must be at least 1")
    arr = np.asarray(xs, dtype=np.float64)
    if not np.isfinite(arr).all():
        raise ValueError("evaluation points must be finite")
    shape = arr.shape
    flat_np = np.ascontiguousarray(arr).ravel()
    out_np = np.empty(flat_np.shape[0], dtype=np.float64)
    apows_np = a ** np.arange(n_terms, dtype=np.float64)
    cdef double[::1] flat = flat_np
    cdef double[::1] out = out_np
    cdef double[::1] apows = apows_np
    cdef double splus = _kahan_const(apows)
    cdef Py_ssize_t i
    cdef bint any_nan = False
    for i in range(flat.shape[0]):
        out[i] = _one(flat[i], b, n_terms, apows, splus)
        if isnan(out[i]):
            any_nan = True
    if any_nan:
        from seqderiv._kernels import pure
        for i in np.nonzero(np.isnan(out_np))[0]:
            out_np[i] = pure.weier_one(float(flat_np[i]), a, b, n_terms)
    return out_np.reshape(shape)
