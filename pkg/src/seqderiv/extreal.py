"""Extended real line: arithmetic on R plus {-inf, +inf}, a compact chart
metric, and a canonical representation for closed sets.

Extended reals are plain Python floats: IEEE +-inf are first-class values
with the required total order (-inf < finite < +inf), and NaN is rejected
at every entry point.  Closed sets are finite unions of closed intervals
and isolated points, kept in a canonical sorted/disjoint form so that set
comparisons are well defined.

All distances live in the arctangent chart, which maps the extended line
onto [-pi/2, pi/2] and makes it a compact metric space; +-inf are then
ordinary boundary points rather than special cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import EmptySetError, InvalidSetError

POS_INF = math.inf
NEG_INF = -math.inf

ExtReal = float  # +-inf allowed, NaN never


def ensure_ext(x: float, what: str = "value") -> float:
    """Validate a single extended-real value (rejects NaN)."""
    x = float(x)
    if math.isnan(x):
        raise InvalidSetError(f"{what} is NaN, not an extended real")
    return x


def is_finite(x: float) -> bool:
    return math.isfinite(x)


def chart(x: float) -> float:
    """Arctangent chart onto [-pi/2, pi/2]; strictly increasing, maps
    -inf -> -pi/2 and +inf -> +pi/2."""
    return math.atan(ensure_ext(x))


def chart_distance(x: float, y: float) -> float:
    """Distance |chart(x) - chart(y)| of two extended reals."""
    return abs(chart(x) - chart(y))


def ext_to_token(x: float):
    """JSON-friendly form: floats stay floats, infinities become tokens."""
    if x == POS_INF:
        return "+inf"
    if x == NEG_INF:
        return "-inf"
    return x


def token_to_ext(tok) -> float:
    if tok == "+inf":
        return POS_INF
    if tok == "-inf":
        return NEG_INF
    try:
        return ensure_ext(float(tok))
    except (TypeError, ValueError) as exc:
        raise InvalidSetError(f"bad extended-real token {tok!r}") from exc


@dataclass(frozen=True)
class ClosedExtSet:
    """Finite union of closed intervals and isolated points in the extended
    reals.

    Instances produced by :func:`normalize` are canonical: intervals are
    pairwise disjoint with lo < hi, sorted; points are sorted, distinct,
    and never lie inside or on an interval.  Construct through
    :meth:`canonical` (or :func:`normalize`) unless you already have
    canonical data.
    """

    intervals: tuple = field(default_factory=tuple)
    points: tuple = field(default_factory=tuple)

    @classmethod
    def canonical(cls, intervals: Iterable = (), points: Iterable = ()) -> "ClosedExtSet":
        return normalize(cls(tuple(tuple(iv) for iv in intervals), tuple(points)))

    @classmethod
    def from_values(cls, values: Iterable[float]) -> "ClosedExtSet":
        return cls.canonical(points=values)

    def is_empty(self) -> bool:
        return not self.intervals and not self.points

    def contains(self, x: float) -> bool:
        x = ensure_ext(x)
        if any(lo <= x <= hi for lo, hi in self.intervals):
            return True
        return any(x == p for p in self.points)

    def min(self) -> float:
        if self.is_empty():
            raise EmptySetError("empty set has no minimum")
        candidates = [iv[0] for iv in self.intervals] + list(self.points)
        return min(candidates)

    def max(self) -> float:
        if self.is_empty():
            raise EmptySetError("empty set has no maximum")
        candidates = [iv[1] for iv in self.intervals] + list(self.points)
        return max(candidates)

    def elements(self) -> list:
        """The finitely many distinguished values of the representation:
        isolated points plus interval endpoints, sorted."""
        out = list(self.points)
        for lo, hi in self.intervals:
            out.extend((lo, hi))
        return sorted(out)

    def to_json_obj(self) -> dict:
        return {
            "intervals": [[ext_to_token(lo), ext_to_token(hi)] for lo, hi in self.intervals],
            "points": [ext_to_token(p) for p in self.points],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ClosedExtSet":
        intervals = [(token_to_ext(lo), token_to_ext(hi)) for lo, hi in obj.get("intervals", [])]
        points = [token_to_ext(p) for p in obj.get("points", [])]
        return cls.canonical(intervals, points)

    def __str__(self) -> str:
        parts = [f"[{lo:g}, {hi:g}]" for lo, hi in self.intervals]
        parts += [f"{{{p:g}}}" for p in self.points]
        return " U ".join(parts) if parts else "{}"


EMPTY_SET = ClosedExtSet()


def normalize(raw: ClosedExtSet) -> ClosedExtSet:
    """Canonicalize a closed-set description.

    Overlapping or touching intervals merge, degenerate intervals become
    points, points absorbed by an interval disappear, and everything is
    sorted.  Set membership is unchanged and the operation is idempotent.
    """
    intervals = []
    points = []
    for lo, hi in raw.intervals:
        lo = ensure_ext(lo, "interval endpoint")
        hi = ensure_ext(hi, "interval endpoint")
        if lo > hi:
            raise InvalidSetError(f"interval with lo > hi: [{lo}, {hi}]")
        if lo == hi:
            points.append(lo)
        else:
            intervals.append((lo, hi))
    for p in raw.points:
        points.append(ensure_ext(p, "point"))

    intervals.sort()
    merged = []
    for lo, hi in intervals:
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))

    kept = []
    for p in sorted(set(points)):
        if not any(lo <= p <= hi for lo, hi in merged):
            kept.append(p)
    return ClosedExtSet(tuple(merged), tuple(kept))


def convex_hull(a: ClosedExtSet) -> ClosedExtSet:
    """Smallest interval (or single point) containing the set."""
    if a.is_empty():
        raise EmptySetError("convex hull of the empty set")
    lo, hi = a.min(), a.max()
    if lo == hi:
        return ClosedExtSet(points=(lo,))
    return ClosedExtSet(intervals=((lo, hi),))


def _chart_segments(a: ClosedExtSet) -> list:
    """Set components mapped through the chart, as sorted closed segments
    (points become degenerate segments)."""
    segs = [(chart(lo), chart(hi)) for lo, hi in a.intervals]
    segs += [(chart(p), chart(p)) for p in a.points]
    segs.sort()
    return segs


def _point_to_segs(x: float, segs: Sequence) -> float:
    best = math.inf
    for lo, hi in segs:
        if lo <= x <= hi:
            return 0.0
        best = min(best, abs(x - lo), abs(x - hi))
    return best


def _directed_hausdorff(from_segs: Sequence, to_segs: Sequence) -> float:
    # sup over the source set of the distance to the target set; the sup
    # over a source segment is attained at its endpoints or at a midpoint
    # of a gap of the target set, so finitely many candidates suffice.
    gap_mids = [
        0.5 * (to_segs[i][1] + to_segs[i + 1][0]) for i in range(len(to_segs) - 1)
    ]
    worst = 0.0
    for p, q in from_segs:
        candidates = [p, q] + [m for m in gap_mids if p <= m <= q]
        for c in candidates:
            worst = max(worst, _point_to_segs(c, to_segs))
    return worst


def hausdorff(a: ClosedExtSet, b: ClosedExtSet) -> float:
    """Hausdorff distance between two non-empty canonical sets in the
    chart metric.  Exact (up to roundoff): no sampling involved."""
    if a.is_empty() or b.is_empty():
        raise EmptySetError("Hausdorff distance requires non-empty sets")
    sa, sb = _chart_segments(a), _chart_segments(b)
    return max(_directed_hausdorff(sa, sb), _directed_hausdorff(sb, sa))


def directed_hausdorff(a: ClosedExtSet, b: ClosedExtSet) -> float:
    """One-sided Hausdorff distance: how far a sticks out of b in the
    chart metric.  Zero exactly when a is a subset of b."""
    if a.is_empty() or b.is_empty():
        raise EmptySetError("Hausdorff distance requires non-empty sets")
    return _directed_hausdorff(_chart_segments(a), _chart_segments(b))
