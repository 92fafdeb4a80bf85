"""Pure-Python kernel for Weierstrass-type cosine series.

Evaluates W(x) = sum_{n<N} a^n cos(b^n pi x) with the phase b^n x reduced
mod 2 *exactly* in integer arithmetic.  Naive float reduction is useless
here: the phase error of term n grows like b^n, so by n ~ 15 (b = 13) a
rounded product has no correct digits left.  Writing x = m * 2^E with an
odd 53-bit integer m makes the reduction a masked big-integer product:

    b^n * x  mod 2  =  ((b^n * m) mod 2^(K+1)) * 2^E,   K = -E >= 0,

and masking by 2^(K+1) - 1 is exact at any size.  The final conversion to
float loses only one rounding, so each term carries O(eps) phase error.

This module is the fallback; the compiled kernel implements the same
contract with 128-bit masked arithmetic for the common range of x.
"""

from __future__ import annotations

import math

import numpy as np

# keep roughly the top 60 bits of the reduced phase before converting to
# float; avoids overflow for subnormal x where K exceeds 1000 bits
_PHASE_KEEP_BITS = 60


def series_tail_terms(a: float, tol: float) -> int:
    """Smallest term count N with tail a^N / (1 - a) <= tol."""
    if not 0.0 < a < 1.0:
        raise ValueError(f"need 0 < a < 1, got {a}")
    if not tol > 0.0:
        raise ValueError(f"need tol > 0, got {tol}")
    n = math.ceil(math.log(tol * (1.0 - a)) / math.log(a))
    return max(n, 1)


def _kahan_sum(terms) -> float:
    s = 0.0
    c = 0.0
    for t in terms:
        y = t - c
        u = s + y
        c = (u - s) - y
        s = u
    return s


def _split_odd(x: float):
    """abs(x) = m * 2^E with m a positive odd integer; x must be nonzero."""
    fr, e = math.frexp(abs(x))
    m = int(math.ldexp(fr, 53))
    tz = (m & -m).bit_length() - 1
    return m >> tz, e - 53 + tz


def weier_one(x: float, a: float, b: int, n_terms: int) -> float:
    """W(x) truncated to n_terms terms, exact phase reduction."""
    apows = [a**n for n in range(n_terms)]
    if x == 0.0:
        return _kahan_sum(apows)
    m, E = _split_odd(x)
    if E >= 1:
        return _kahan_sum(apows)  # phase is an even integer: cos = 1
    if E == 0:
        return -_kahan_sum(apows)  # phase odd: cos = -1
    K = -E
    mask = (1 << (K + 1)) - 1
    shift = max(0, (K + 1) - _PHASE_KEEP_BITS)
    bp = 1
    bmask = b & mask
    terms = []
    for n in range(n_terms):
        r = (bp * m) & mask
        y = math.ldexp(float(r >> shift), E + shift)
        if y > 1.0:
            y = 2.0 - y
        terms.append(apows[n] * math.cos(math.pi * y))
        bp = (bp * bmask) & mask
    return _kahan_sum(terms)


def weier_many(xs, a: float, b: int, n_terms: int) -> np.ndarray:
    """Vectorized evaluation; scalar loop over exact reductions."""
    arr = np.asarray(xs, dtype=np.float64)
    out = np.empty(arr.shape, dtype=np.float64)
    flat_in = arr.ravel()
    flat_out = out.ravel()
    for i in range(flat_in.size):
        flat_out[i] = weier_one(float(flat_in[i]), a, b, n_terms)
    return out
