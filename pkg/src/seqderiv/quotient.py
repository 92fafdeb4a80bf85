"""Difference-quotient engines: Newton, cord, and symmetric quotients,
the convex decomposition of a cord quotient into one-sided quotients, and
trace recording over decay sequences.

Quotient magnitudes above a fixed threshold map to +-inf so that infinite
derivatives are detected reproducibly; everything else is plain float
arithmetic with a single subtraction per quotient (no re-association).
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ParamError
from .extreal import NEG_INF, POS_INF, ensure_ext, ext_to_token
from .gallery import GalleryFunction
from .seqgen import DecaySequence

DEFAULT_INFINITY_THRESHOLD = 1e12


def cap_to_ext(q: float, infinity_threshold: float = DEFAULT_INFINITY_THRESHOLD) -> float:
    """Map quotient values beyond the threshold to +-inf."""
    q = ensure_ext(q, "quotient")
    if q > infinity_threshold:
        return POS_INF
    if q < -infinity_threshold:
        return NEG_INF
    return q


def newton_quotient(
    f: GalleryFunction,
    x: float,
    h: float,
    infinity_threshold: float = DEFAULT_INFINITY_THRESHOLD,
) -> float:
    """(f(x+h) - f(x)) / h for nonzero h of either sign."""
    if h == 0:
        raise ParamError("newton_quotient needs h != 0")
    num = f.eval(x + h) - f.eval(x)
    return cap_to_ext(num / h, infinity_threshold)


def cord_quotient(
    f: GalleryFunction,
    x: float,
    h: float,
    k: float,
    infinity_threshold: float = DEFAULT_INFINITY_THRESHOLD,
) -> float:
    """(f(x+h) - f(x-k)) / (h+k) across the point, h, k > 0."""
    if not (h > 0 and k > 0):
        raise ParamError(f"cord_quotient needs h > 0 and k > 0, got h={h}, k={k}")
    num = f.eval(x + h) - f.eval(x - k)
    return cap_to_ext(num / (h + k), infinity_threshold)


def symmetric_quotient(
    f: GalleryFunction,
    x: float,
    h: float,
    infinity_threshold: float = DEFAULT_INFINITY_THRESHOLD,
) -> float:
    """(f(x+h) - f(x-h)) / (2h): the cord quotient with k = h."""
    return cord_quotient(f, x, h, h, infinity_threshold)


def decompose(
    f: GalleryFunction,
    h: float,
    k: float,
    infinity_threshold: float = DEFAULT_INFINITY_THRESHOLD,
):
    """Split the cord quotient at 0 into its one-sided parts.

    Returns (r, right_q, left_q) with r = h/(h+k), right_q = f(h)/h,
    left_q = f(-k)/(-k); the cord quotient equals r*right_q + (1-r)*left_q
    up to rounding.  Assumes the normalization f(0) = 0 is meaningful for
    f (every gallery construction anchored at 0 has it).
    """
    if not (h > 0 and k > 0):
        raise ParamError(f"decompose needs h > 0 and k > 0, got h={h}, k={k}")
    r = h / (h + k)
    right_q = cap_to_ext(f.eval(h) / h, infinity_threshold)
    left_q = cap_to_ext(f.eval(-k) / (-k), infinity_threshold)
    return r, right_q, left_q


@dataclass(frozen=True)
class TraceEntry:
    n: int
    h: float
    k: Optional[float]  # None for Newton traces
    value: float


@dataclass(frozen=True)
class QuotientTrace:
    """Recorded quotient values along decay sequences.

    ``entries`` are consecutive in n; ``meta`` carries the function name,
    the point, and the sequence specs for audit.
    """

    entries: tuple
    meta: tuple  # sorted (key, value) pairs

    def values(self) -> np.ndarray:
        return np.array([e.value for e in self.entries], dtype=np.float64)

    def steps(self) -> np.ndarray:
        """Step scale per entry: h for Newton, max(h, k) for cord."""
        return np.array(
            [e.h if e.k is None else max(e.h, e.k) for e in self.entries],
            dtype=np.float64,
        )

    def meta_dict(self) -> dict:
        return dict(self.meta)

    def to_json_obj(self) -> dict:
        return {
            "meta": self.meta_dict(),
            "entries": [
                [e.n, e.h, e.k, ext_to_token(e.value)] for e in self.entries
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("n,h,k,value\n")
        for e in self.entries:
            k = "" if e.k is None else repr(e.k)
            buf.write(f"{e.n},{e.h!r},{k},{ext_to_token(e.value)}\n")
        return buf.getvalue()


def trace(
    f: GalleryFunction,
    x: float,
    hseq: DecaySequence,
    kseq: Optional[DecaySequence] = None,
    N: int = 100,
    infinity_threshold: float = DEFAULT_INFINITY_THRESHOLD,
) -> QuotientTrace:
    """Newton (kseq absent) or cord quotients along the first N terms."""
    if N < 1:
        raise ParamError(f"trace needs N >= 1, got {N}")
    entries = []
    for n in range(hseq.offset, hseq.offset + N):
        h = hseq.term(n)
        if kseq is None:
            q = newton_quotient(f, x, h, infinity_threshold)
            entries.append(TraceEntry(n, h, None, q))
        else:
            k = kseq.term(n)
            q = cord_quotient(f, x, h, k, infinity_threshold)
            entries.append(TraceEntry(n, h, k, q))
    meta = (
        ("fn", f.describe()),
        ("x", x),
        ("h_seq", hseq.spec_string()),
        ("k_seq", kseq.spec_string() if kseq is not None else None),
        ("n_entries", N),
        ("infinity_threshold", infinity_threshold),
    )
    return QuotientTrace(tuple(entries), meta)
