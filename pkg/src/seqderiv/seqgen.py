"""Generators for positive null sequences (h_n, k_n), subsequence
extraction, and empirical decay-rate classification.

Four families are built in:

* ``harmonic(p, q)``   -- 1 / (p + q*n)
* ``polynomial(p, m, a)`` -- 1 / p(n) where p(n)/n**m -> a
* ``exponential(a)``   -- a**(-n)
* ``explicit(values)`` -- a finite list of positive reals

Every sequence is validated empirically at construction: terms must be
strictly positive and strictly decreasing along a prefix, and must drop
below a small threshold within a bounded horizon (this is what "tends to
zero" means at desk scale, and it catches malformed explicit lists).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError, InvalidMapError, ParamError, SequenceIndexError

DECAY_HORIZON = 10_000  # max prefix walked when verifying decay
DECAY_EPS = 1e-3        # a verified sequence must drop below this
MAP_CHECK_PREFIX = 64   # indices over which a subsequence map is checked


class DecaySequence:
    """A positive, strictly decreasing sequence tending to zero.

    Subclasses implement ``_term_raw``; the public :meth:`term` validates
    positivity.  Instances are immutable and safe to share across threads.
    """

    offset: int = 1

    def _term_raw(self, n: int) -> float:
        raise NotImplementedError

    def term(self, n: int) -> float:
        if n < self.offset:
            raise SequenceIndexError(
                f"index {n} below starting offset {self.offset}"
            )
        t = self._term_raw(n)
        if not (t > 0.0) or math.isinf(t):
            raise DomainError(f"term({n}) = {t!r} is not a positive real")
        return t

    def spec_string(self) -> str:
        raise NotImplementedError

    def _verify_decay(self, horizon: int = DECAY_HORIZON, eps: float = DECAY_EPS) -> None:
        """Walk the prefix until the terms drop below ``eps``.

        Raises if a term is nonpositive, fails to decrease strictly, or
        the horizon is exhausted while still above ``eps``.  Stops at the
        first term below ``eps`` so that fast-decaying sequences never
        evaluate terms deep enough to underflow.
        """
        prev = None
        n = self.offset
        end = self.offset + horizon
        while n < end:
            try:
                t = self.term(n)
            except SequenceIndexError:
                break  # explicit list ended
            if prev is not None and not (t < prev):
                raise DomainError(
                    f"sequence not strictly decreasing at n={n}: "
                    f"term({n - 1})={prev!r}, term({n})={t!r}"
                )
            if t < eps:
                return
            prev = t
            n += 1
        raise DomainError(
            f"sequence did not drop below {eps} within the verification "
            f"horizon (last checked n={n - 1})"
        )

    def last_index_at_or_above(self, threshold: float, n_max: int = 10**6) -> int:
        """Largest index n <= n_max with term(n) >= threshold (terms are
        decreasing, so this is a bisection).  Returns offset-1 if even the
        first term is below the threshold."""
        lo = self.offset
        if self._safe(lo) < threshold:
            return lo - 1
        hi = lo
        while hi < n_max and self._safe(hi * 2) >= threshold:
            hi *= 2
        hi = min(hi * 2, n_max)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._safe(mid) >= threshold:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def _safe(self, n: int) -> float:
        try:
            return self._term_raw(n)
        except SequenceIndexError:
            return -1.0


@dataclass(frozen=True)
class HarmonicDecay(DecaySequence):
    """term(n) = 1 / (p + q*n), q > 0."""

    p: float
    q: float
    offset: int = 1

    def __post_init__(self):
        if not self.q > 0:
            raise ParamError(f"harmonic q must be positive, got {self.q}")
        if self.p + self.q * self.offset <= 0:
            raise ParamError("harmonic p + q*offset must be positive")
        self._verify_decay()

    def _term_raw(self, n: int) -> float:
        return 1.0 / (self.p + self.q * n)

    def spec_string(self) -> str:
        return f"harmonic:{self.p:g},{self.q:g}"


@dataclass(frozen=True)
class PolynomialDecay(DecaySequence):
    """term(n) = 1 / p(n) for an increasing p with p(n)/n**m -> a.

    ``p`` may be any callable; :func:`power_decay` builds the common pure
    power case p(n) = a * n**m.
    """

    p: Callable[[int], float]
    m: float
    a: float
    offset: int = 1

    def __post_init__(self):
        if not self.m > 0:
            raise ParamError(f"polynomial exponent m must be positive, got {self.m}")
        if not self.a > 0:
            raise ParamError(f"polynomial rate constant a must be positive, got {self.a}")
        self._verify_decay()

    def _term_raw(self, n: int) -> float:
        return 1.0 / self.p(n)

    def spec_string(self) -> str:
        return f"poly:{self.m:g},{self.a:g}"


def power_decay(m: float, a: float = 1.0, offset: int = 1) -> PolynomialDecay:
    """Polynomial decay with p(n) = a * n**m exactly."""
    return PolynomialDecay(p=lambda n: a * float(n) ** m, m=m, a=a, offset=offset)


@dataclass(frozen=True)
class ExponentialDecay(DecaySequence):
    """term(n) = a**(-n), a > 1."""

    a: float
    offset: int = 1

    def __post_init__(self):
        if not self.a > 1:
            raise ParamError(f"exponential base must exceed 1, got {self.a}")
        self._verify_decay()

    def _term_raw(self, n: int) -> float:
        return self.a ** (-n)

    def spec_string(self) -> str:
        return f"exp:{self.a:g}"


@dataclass(frozen=True)
class ExplicitDecay(DecaySequence):
    """A finite, explicitly listed decreasing sequence."""

    values: tuple
    offset: int = 1

    def __post_init__(self):
        if not self.values:
            raise ParamError("explicit sequence needs at least one value")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        self._verify_decay(eps=self.decay_eps)

    # explicit lists are finite, so the decay threshold must be met by the
    # final listed value; keep it overridable for short experiment lists
    decay_eps: float = DECAY_EPS

    def _term_raw(self, n: int) -> float:
        i = n - self.offset
        if i >= len(self.values):
            raise SequenceIndexError(f"explicit sequence has no term {n}")
        return self.values[i]

    def spec_string(self) -> str:
        return "list:" + ",".join(f"{v:g}" for v in self.values)


@dataclass(frozen=True)
class MappedDecay(DecaySequence):
    """Subsequence n -> base.term(index_map(n)); see :func:`subsequence`."""

    base: DecaySequence
    index_map: Callable[[int], int]
    offset: int = 1

    def __post_init__(self):
        prev = None
        for n in range(self.offset, self.offset + MAP_CHECK_PREFIX):
            idx = self.index_map(n)
            if idx != int(idx):
                raise InvalidMapError(f"index map returned non-integer {idx!r}")
            idx = int(idx)
            if prev is not None and idx <= prev:
                raise InvalidMapError(
                    f"index map not strictly increasing at n={n}: "
                    f"{prev} then {idx}"
                )
            if n == self.offset and idx < self.base.offset:
                raise InvalidMapError(
                    f"index map image starts at {idx}, below base offset "
                    f"{self.base.offset}"
                )
            prev = idx
        self._verify_decay()

    def _term_raw(self, n: int) -> float:
        return self.base._term_raw(int(self.index_map(n)))

    def spec_string(self) -> str:
        return f"subseq({self.base.spec_string()})"


def term(seq: DecaySequence, n: int) -> float:
    """The n-th term of the sequence (n >= offset)."""
    return seq.term(n)


def subsequence(seq: DecaySequence, index_map: Callable[[int], int]) -> DecaySequence:
    """Subsequence along a strictly increasing index map.

    The map is verified over a finite prefix; decay invariants carry over
    automatically.
    """
    return MappedDecay(base=seq, index_map=index_map)


@dataclass(frozen=True)
class RateClassification:
    kind: str  # "polynomial" | "exponential" | "unknown"
    m: Optional[float] = None
    a: Optional[float] = None
    poly_residual: float = math.inf
    exp_residual: float = math.inf

    def __str__(self) -> str:
        if self.kind == "polynomial":
            return f"polynomial(m={self.m:g}, a={self.a:g})"
        if self.kind == "exponential":
            return f"exponential(a={self.a:g})"
        return "unknown"


def _rel_residual(x: np.ndarray, y: np.ndarray):
    """Relative residual sqrt(SS_res/SS_tot) of the least-squares line,
    plus (slope, intercept)."""
    coeffs = np.polyfit(x, y, 1)
    resid = y - np.polyval(coeffs, x)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        return math.inf, coeffs
    return math.sqrt(float(np.sum(resid**2)) / ss_tot), coeffs


def rate_classify(
    seq: DecaySequence, N: int, fit_tol: float = 1e-2
) -> RateClassification:
    """Classify empirical decay as polynomial or exponential.

    Fits log(1/term(n)) against log(n) (polynomial: slope m, intercept
    log a) and against n (exponential: slope log a) over the tail half of
    the first N terms.  Returns the family whose relative residual is
    below ``fit_tol``; ambiguous or poor fits give ``unknown``.
    """
    if N < 16:
        raise ParamError(f"rate_classify needs N >= 16, got {N}")
    lo = max(seq.offset, N // 2)
    ns = np.arange(lo, N + 1, dtype=float)
    ys = np.array([-math.log(seq.term(int(n))) for n in ns])

    r_poly, c_poly = _rel_residual(np.log(ns), ys)
    r_exp, c_exp = _rel_residual(ns, ys)

    poly_ok = r_poly <= fit_tol
    exp_ok = r_exp <= fit_tol
    if poly_ok and exp_ok:
        # both pass: accept only a clear winner, otherwise stay honest
        if r_poly * 10 <= r_exp:
            exp_ok = False
        elif r_exp * 10 <= r_poly:
            poly_ok = False
        else:
            return RateClassification("unknown", poly_residual=r_poly, exp_residual=r_exp)
    if poly_ok:
        m = float(c_poly[0])
        a = math.exp(float(c_poly[1]))
        return RateClassification("polynomial", m=m, a=a, poly_residual=r_poly, exp_residual=r_exp)
    if exp_ok:
        a = math.exp(float(c_exp[0]))
        return RateClassification("exponential", a=a, poly_residual=r_poly, exp_residual=r_exp)
    return RateClassification("unknown", poly_residual=r_poly, exp_residual=r_exp)


def parse_sequence_spec(spec: str) -> DecaySequence:
    """Parse compact CLI sequence specs.

    ``harmonic:p,q`` | ``poly:m,a`` | ``exp:a`` | ``list:v1,v2,...``
    """
    head, _, rest = spec.partition(":")
    head = head.strip().lower()
    try:
        if head == "harmonic":
            p, q = (float(v) for v in rest.split(","))
            return HarmonicDecay(p, q)
        if head == "poly":
            m, a = (float(v) for v in rest.split(","))
            return power_decay(m, a)
        if head == "exp":
            return ExponentialDecay(float(rest))
        if head == "list":
            return ExplicitDecay(tuple(float(v) for v in rest.split(",")))
    except (ValueError, TypeError) as exc:
        raise ParamError(f"bad sequence spec {spec!r}: {exc}") from exc
    raise ParamError(f"unknown sequence family {head!r} in spec {spec!r}")
