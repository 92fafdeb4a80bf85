"""Integer machinery for exponential decay rates: continued fractions,
commensurability of log a / log b, and witnesses (i, j) realizing
i*alpha - j close to a target.

Floating point cannot certify irrationality, so the commensurability
check either finds an exact relation in rational arithmetic or reports
"no small relation up to the bound" -- never "irrational".  Extended
precision (default 100 bits, SEQDERIV_PRECISION overrides) keeps witness
verification trustworthy for indices up to about 10^6.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

import mpmath
import numpy as np

from .errors import ParamError

DEFAULT_PRECISION_BITS = 100
DEFAULT_I_BOUND = 10**6
PRECISION_ENV = "SEQDERIV_PRECISION"


def precision_bits() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION_BITS
    try:
        bits = int(raw)
    except ValueError as exc:
        raise ParamError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from exc
    return max(bits, 53)


def log_ratio(a: float, b: float) -> mpmath.mpf:
    """log(a)/log(b) at working precision."""
    if not (a > 0 and b > 0 and b != 1):
        raise ParamError(f"log_ratio needs a > 0 and b > 0, b != 1, got a={a}, b={b}")
    with mpmath.workprec(precision_bits()):
        return mpmath.log(a) / mpmath.log(b)


def continued_fraction(alpha, depth: int) -> List[int]:
    """Partial quotients [a0; a1, a2, ...] of alpha, at most ``depth`` of
    them.

    Accepts exact rationals (int, Fraction) or numeric alpha (float, mpf);
    numeric expansion stops early when the remainder is below working
    resolution, so quotients reflecting only representation noise are
    never emitted.
    """
    if depth < 1:
        raise ParamError(f"continued_fraction needs depth >= 1, got {depth}")
    if isinstance(alpha, (int, Fraction)):
        if alpha <= 0:
            raise ParamError(f"alpha must be positive, got {alpha}")
        out = []
        num, den = Fraction(alpha).numerator, Fraction(alpha).denominator
        while den and len(out) < depth:
            a, num = divmod(num, den)
            out.append(int(a))
            num, den = den, num
        return out
    bits = precision_bits()
    with mpmath.workprec(bits):
        if isinstance(alpha, mpmath.mpf):
            x = alpha
            src_bits = bits
        else:
            # a plain float carries 53 significant bits; expanding past
            # that recovers its dyadic representation, not the number it
            # stands for
            x = mpmath.mpf(alpha)
            src_bits = 53
        if x <= 0:
            raise ParamError(f"alpha must be positive, got {alpha}")
        resolution = mpmath.mpf(2) ** (-(src_bits - 10))
        out = []
        for _ in range(depth):
            a = int(mpmath.floor(x))
            out.append(a)
            frac = x - a
            if frac < resolution:
                break
            x = 1 / frac
        return out


def convergents(quotients: List[int]) -> List[Fraction]:
    """Convergents p_k/q_k of a partial-quotient list."""
    out = []
    p_prev, q_prev = 1, 0
    p, q = quotients[0], 1
    out.append(Fraction(p, q))
    for a in quotients[1:]:
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        out.append(Fraction(p, q))
    return out


@dataclass(frozen=True)
class ApproxWitness:
    """Integers (i, j) with i*alpha - j close to the target t."""

    i: int
    j: int
    achieved: float  # i*alpha - j at working precision, rounded to float
    error: float     # |achieved - t|
    alpha: float
    t: float

    found = True

    def to_json_obj(self) -> dict:
        return {
            "found": True,
            "i": self.i,
            "j": self.j,
            "achieved": self.achieved,
            "error": self.error,
            "alpha": self.alpha,
            "t": self.t,
        }


@dataclass(frozen=True)
class NoWitness:
    """Search exhausted the bounds without reaching the tolerance.

    Legitimate for rational alpha = p/q: achievable values i*alpha - j
    form multiples of 1/q, and targets between lattice points are simply
    unreachable.
    """

    alpha: float
    t: float
    eps: float
    i_bound: int
    best_i: Optional[int] = None
    best_error: Optional[float] = None

    found = False

    def to_json_obj(self) -> dict:
        return {
            "found": False,
            "alpha": self.alpha,
            "t": self.t,
            "eps": self.eps,
            "i_bound": self.i_bound,
            "best_i": self.best_i,
            "best_error": self.best_error,
        }


def approx_target(
    alpha, t: float, eps: float, i_bound: int = DEFAULT_I_BOUND
) -> Union[ApproxWitness, NoWitness]:
    """Smallest-i witness with |i*alpha - j - t| < eps, j >= 0, i <= i_bound.

    A float64 sweep proposes candidate i in ascending order (with enough
    slack to be exhaustive for i up to ~10^6); each candidate is verified
    at working precision before being returned, so the witness error is
    trustworthy.  Returns a NoWitness record instead of raising when the
    bounds are exhausted.
    """
    if not eps > 0:
        raise ParamError(f"eps must be positive, got {eps}")
    if i_bound < 1:
        raise ParamError(f"i_bound must be >= 1, got {i_bound}")
    bits = precision_bits()
    with mpmath.workprec(bits):
        if isinstance(alpha, mpmath.mpf):
            alpha_mp = alpha
        elif isinstance(alpha, Fraction):
            alpha_mp = mpmath.mpf(alpha.numerator) / alpha.denominator
        else:
            alpha_mp = mpmath.mpf(alpha)
        alpha_f = float(alpha_mp)
        # float64 prescan: |i*alpha - t| rounds off by < i_bound * 2^-52,
        # covered by the slack below for the default bound
        slack = max(1e-8, i_bound * 2.0**-50)
        i_arr = np.arange(1, i_bound + 1, dtype=np.float64)
        d = i_arr * alpha_f - t
        j_arr = np.maximum(np.rint(d), 0.0)
        err = np.abs(d - j_arr)
        candidates = np.nonzero(err < eps + slack)[0]
        best_i = None
        best_err = None
        if candidates.size == 0 and err.size:
            # nothing verifiable: report the float64 near-miss for diagnosis
            k = int(np.argmin(err))
            best_i = k + 1
            best_err = mpmath.mpf(float(err[k]))
        for idx in candidates:
            i = int(idx) + 1
            j = int(j_arr[idx])
            achieved_mp = i * alpha_mp - j
            err_mp = abs(achieved_mp - mpmath.mpf(t))
            if best_err is None or err_mp < best_err:
                best_err, best_i = err_mp, i
            if err_mp < eps:
                achieved = float(achieved_mp)
                return ApproxWitness(
                    i=i,
                    j=j,
                    achieved=achieved,
                    error=abs(achieved - float(t)),
                    alpha=alpha_f,
                    t=float(t),
                )
        return NoWitness(
            alpha=alpha_f,
            t=float(t),
            eps=eps,
            i_bound=i_bound,
            best_i=best_i,
            best_error=None if best_err is None else float(best_err),
        )


@dataclass(frozen=True)
class RationalRelation:
    """log a / log b = p/q in lowest terms (a^q = b^p)."""

    p: int
    q: int
    exact: bool  # True: verified in rational arithmetic; False: CF evidence
    note: str = ""

    is_rational = True

    def to_json_obj(self) -> dict:
        return {
            "relation": "rational",
            "p": self.p,
            "q": self.q,
            "exact": self.exact,
            "note": self.note,
        }


@dataclass(frozen=True)
class NoSmallRelation:
    """No relation a^q = b^p with p, q up to the bound; NOT a claim of
    irrationality."""

    exp_bound: int

    is_rational = False

    def to_json_obj(self) -> dict:
        return {"relation": "no_small_relation", "exp_bound": self.exp_bound}


def rational_check(
    a: float, b: float, exp_bound: int = 64
) -> Union[RationalRelation, NoSmallRelation]:
    """Search for a^q = b^p with 1 <= p, q <= exp_bound.

    Floats are exact binary rationals, so the primary search runs in
    exact rational arithmetic and its positives are certain.  A secondary
    continued-fraction test catches relations that hold for the intended
    real values but not for their float images; those are flagged
    exact=False with the precision used.
    """
    if not (a > 1 and b > 1):
        raise ParamError(f"rational_check needs a > 1 and b > 1, got a={a}, b={b}")
    if exp_bound < 1:
        raise ParamError(f"exp_bound must be >= 1, got {exp_bound}")
    fa, fb = Fraction(a), Fraction(b)
    powers = {}
    bp = Fraction(1)
    for p in range(1, exp_bound + 1):
        bp *= fb
        powers[bp] = p
    aq = Fraction(1)
    for q in range(1, exp_bound + 1):
        aq *= fa
        p = powers.get(aq)
        if p is not None:
            g = math.gcd(p, q)
            return RationalRelation(p // g, q // g, exact=True)
    bits = precision_bits()
    alpha = log_ratio(a, b)
    with mpmath.workprec(bits):
        # float images of truly related reals land within ~2^-50 of p/q,
        # while convergents of a generic alpha with q <= exp_bound stay
        # no closer than ~1/q^2 >= 2^-12; 2^-45 separates the two regimes
        tol = mpmath.mpf(2) ** -45
        for frac in convergents(continued_fraction(alpha, 64)):
            p, q = frac.numerator, frac.denominator
            if q > exp_bound or p > exp_bound:
                break
            if p >= 1 and abs(alpha - mpmath.mpf(p) / q) < tol:
                return RationalRelation(
                    int(p),
                    int(q),
                    exact=False,
                    note=f"continued-fraction evidence at {bits}-bit precision",
                )
    return NoSmallRelation(exp_bound=exp_bound)
