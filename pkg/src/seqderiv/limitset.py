"""Estimation and prediction of derivative limit sets.

Estimators sample difference quotients along seeded probe families,
cluster the small-step tail in the compact chart metric, and report a
canonical closed set plus classification and evidence.  They never claim
exactness: the evidence records budget, tolerances, and a stability flag
(the estimate is re-clustered from the first half of the sample stream
and compared).

Predictors implement the analytic results for discrete two-slope
functions: polynomial decay rates give weight grids accumulating on a
whole interval, exponential rates give either a discrete ratio lattice
(commensurable logs) or a dense interval with integer witnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from . import dioph
from .errors import (
    BracketError,
    DomainError,
    InsufficientDataError,
    ParamError,
    SearchFailureError,
)
from .extreal import ClosedExtSet, chart, hausdorff
from .gallery import DiscreteDomain, GalleryFunction, Interval
from .quotient import (
    DEFAULT_INFINITY_THRESHOLD,
    QuotientTrace,
    cord_quotient,
)

DEFAULT_CLUSTER_TOL = 1e-3
DEFAULT_TAIL_FRACTION = 0.5
MIN_TRACE_LEN = 100

# harmonic-progression phases: h = 1/(theta + 2*pi*k) pins sin(1/h) to
# sin(theta); includes the extremes, the half-amplitude boundary values,
# and small pins (for functions with growing envelopes, mid-range
# quotient values are attained only where sin(1/h) is near zero)
PROBE_THETAS = (
    math.pi / 2,
    3 * math.pi / 2,
    math.pi / 6,
    5 * math.pi / 6,
    7 * math.pi / 6,
    11 * math.pi / 6,
    1.0,
    2.0,
    4.0,
    5.5,
    0.05,
    math.pi + 0.05,
    0.2,
    math.pi + 0.2,
)


@dataclass(frozen=True)
class SamplingBudget:
    """Reproducible sampling parameters for the estimators."""

    samples: int = 100_000
    seed: int = 0
    cluster_tol: float = DEFAULT_CLUSTER_TOL
    tail_fraction: float = DEFAULT_TAIL_FRACTION
    step_min: float = 1e-12
    step_max: float = 1e-1
    infinity_threshold: float = DEFAULT_INFINITY_THRESHOLD
    # a cluster needs this many member samples to count as a limit;
    # unreplicated stray values are sampling noise, not evidence
    min_support: int = 3

    def __post_init__(self):
        if self.samples < MIN_TRACE_LEN:
            raise ParamError(f"budget needs samples >= {MIN_TRACE_LEN}, got {self.samples}")
        if not self.cluster_tol > 0:
            raise ParamError("cluster_tol must be positive")
        if not 0.0 < self.tail_fraction <= 1.0:
            raise ParamError("tail_fraction must be in (0, 1]")
        if not 0.0 < self.step_min < self.step_max:
            raise ParamError("need 0 < step_min < step_max")
        if not self.infinity_threshold > 0:
            raise ParamError("infinity_threshold must be positive")
        if self.min_support < 1:
            raise ParamError("min_support must be >= 1")


@dataclass(frozen=True)
class Evidence:
    """How an estimate or prediction was produced."""

    method: str  # "sampling" | "analytic"
    samples: int = 0
    seed: Optional[int] = None
    cluster_tol: Optional[float] = None
    tail_fraction: Optional[float] = None
    stable: Optional[bool] = None
    stability_gap: Optional[float] = None
    cluster_reps: tuple = ()
    witnesses: tuple = ()  # JSON-ready dicts
    notes: str = ""

    def to_json_obj(self) -> dict:
        out = {"method": self.method}
        for key in (
            "samples",
            "seed",
            "cluster_tol",
            "tail_fraction",
            "stable",
            "stability_gap",
            "notes",
        ):
            val = getattr(self, key)
            if val is None or val == "":
                continue
            if key == "samples" and not val:
                continue
            if key == "stability_gap" and val == math.inf:
                val = "+inf"
            out[key] = val
        if self.cluster_reps:
            out["cluster_reps"] = [_json_num(r) for r in self.cluster_reps]
        if self.witnesses:
            out["witnesses"] = list(self.witnesses)
        return out


@dataclass(frozen=True)
class LimitSetEstimate:
    """A closed set of quotient limits plus structure and provenance."""

    set: ClosedExtSet
    classification: str
    evidence: Evidence

    def to_json_obj(self) -> dict:
        obj = {
            "set": self.set.to_json_obj(),
            "classification": self.classification,
            "evidence": self.evidence.to_json_obj(),
        }
        if self.classification == "discrete_with_accumulation":
            obj["classification_points"] = [
                _json_num(p) for p in self.set.points
            ]
        return obj

    def to_csv(self) -> str:
        """Cluster representatives, one per row."""
        lines = ["cluster,representative"]
        for idx, rep in enumerate(self.evidence.cluster_reps):
            lines.append(f"{idx},{rep!r}")
        return "\n".join(lines) + "\n"


def _json_num(x: float):
    from .extreal import ext_to_token

    return ext_to_token(x)


def classify_set(s: ClosedExtSet) -> str:
    if s.is_empty():
        return "empty"
    n_int, n_pts = len(s.intervals), len(s.points)
    if n_int == 0 and n_pts == 1:
        return "single_point"
    if n_int == 1 and n_pts == 0:
        return "closed_interval"
    if n_int == 0 and n_pts >= 2:
        return "discrete_with_accumulation"
    return "unknown"


def _cluster_values(
    tail_values: np.ndarray, cluster_tol: float, min_support: int = 1
) -> Tuple[ClosedExtSet, tuple]:
    """Cluster quotient values in the chart metric.

    Single-linkage clusters break at chart gaps above cluster_tol, and
    clusters with fewer than min_support members are dropped (a value
    observed once in tens of thousands of random samples is noise, not a
    limit; trace-based callers pass 1 to keep everything).  A second
    pass chains adjacent clusters whose separating gap is small, either
    absolutely (under 3x cluster_tol) or relative to the width already
    accumulated on either side (sampling a filled interval leaves gaps
    roughly log(n)/n wide, so splits inside wide clusters heal while
    genuinely isolated points, whose width is zero, never over-merge).
    A chained range wider than 2x cluster_tol becomes an interval,
    otherwise it stays a point.  Every representative and interval
    endpoint is an actual attained sample value, never an average.
    """
    sv = np.sort(tail_values)
    ch = np.arctan(sv)
    n = sv.size
    # first pass: single-linkage clusters
    breaks = np.nonzero(np.diff(ch) > cluster_tol)[0]
    starts = np.concatenate(([0], breaks + 1))
    ends = np.concatenate((breaks, [n - 1]))
    if min_support > 1:
        keep = (ends - starts + 1) >= min_support
        if keep.any():
            starts, ends = starts[keep], ends[keep]
    reps = tuple(
        float(sv[s + (e - s) // 2]) for s, e in zip(starts, ends)
    )
    # second pass: chain clusters across small gaps
    intervals = []
    points = []
    gi = 0
    while gi < len(starts):
        s, e = starts[gi], ends[gi]
        gj = gi
        while gj + 1 < len(starts):
            s2, e2 = starts[gj + 1], ends[gj + 1]
            gap = ch[s2] - ch[e]
            w = max(ch[e] - ch[s], ch[e2] - ch[s2])
            if gap < max(3 * cluster_tol, 0.25 * w):
                e = e2
                gj += 1
            else:
                break
        if ch[e] - ch[s] > 2 * cluster_tol:
            intervals.append((float(sv[s]), float(sv[e])))
        else:
            points.append(float(sv[s + (e - s) // 2]))
        gi = gj + 1
    return ClosedExtSet.canonical(intervals, points), reps


def _tail(values_desc: np.ndarray, tail_fraction: float) -> np.ndarray:
    n = values_desc.size
    keep = max(1, math.ceil(n * tail_fraction))
    return values_desc[n - keep :]


def subsequential_limits(
    t: QuotientTrace,
    tail_fraction: float = DEFAULT_TAIL_FRACTION,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
) -> ClosedExtSet:
    """Closed set of apparent limit values of a quotient trace.

    Orders entries by decreasing step scale, keeps the smallest-step tail
    fraction, and clusters the values in the chart metric.
    """
    if not 0.0 < tail_fraction <= 1.0:
        raise ParamError("tail_fraction must be in (0, 1]")
    if not cluster_tol > 0:
        raise ParamError("cluster_tol must be positive")
    if len(t.entries) < MIN_TRACE_LEN:
        raise InsufficientDataError(
            f"need at least {MIN_TRACE_LEN} trace entries, got {len(t.entries)}"
        )
    steps = t.steps()
    values = t.values()
    order = np.argsort(-steps, kind="stable")
    tail = _tail(values[order], tail_fraction)
    result, _ = _cluster_values(tail, cluster_tol)
    return result


def _cap_array(q: np.ndarray, infinity_threshold: float) -> np.ndarray:
    if np.isnan(q).any():
        raise DomainError("quotient evaluation produced NaN")
    q = np.where(q > infinity_threshold, np.inf, q)
    q = np.where(q < -infinity_threshold, -np.inf, q)
    return q


def _geom_indices(k_lo: int, k_hi: int, count: int) -> np.ndarray:
    """About ``count`` distinct integers spanning [k_lo, k_hi]
    geometrically; covers every scale with integer phases.

    Bounds arrive as exact ints but may exceed the int64 range for very
    small steps, so the spacing runs in float64 (indices past 2^53 are
    still integral as floats)."""
    if k_hi <= k_lo:
        return np.array([float(k_lo)], dtype=np.float64)
    raw = np.geomspace(float(k_lo), float(k_hi), count)
    return np.unique(np.rint(raw))


def _harmonic_steps(theta: float, step_min: float, step_max: float, count: int) -> np.ndarray:
    k_lo = max(1, math.ceil((1.0 / step_max - theta) / (2 * math.pi)))
    k_hi = math.floor((1.0 / step_min - theta) / (2 * math.pi))
    if k_hi < k_lo:
        return np.empty(0)
    ks = _geom_indices(k_lo, k_hi, count)
    return 1.0 / (theta + 2 * math.pi * ks)


def _secant_magnitudes(budget: SamplingBudget, step_max: float, count: int, rng) -> List[np.ndarray]:
    """Component arrays of positive step magnitudes; the half-budget run
    uses each component's first half (prefix property)."""
    step_min = min(budget.step_min, step_max / 1e3)
    n_random = int(count * 0.6)
    comps = [
        10.0 ** rng.uniform(math.log10(step_min), math.log10(step_max), n_random)
    ]
    n_struct = count - n_random
    per = max(8, n_struct // len(PROBE_THETAS))
    for theta in PROBE_THETAS:
        arr = _harmonic_steps(theta, step_min, step_max, per)
        if arr.size:
            comps.append(arr)
    return comps


def _halves(comps: List[np.ndarray]) -> List[np.ndarray]:
    return [c[: max(1, c.size // 2)] for c in comps]


def _estimate_from_values(
    steps: np.ndarray,
    values: np.ndarray,
    budget: SamplingBudget,
    notes: str,
) -> LimitSetEstimate:
    order = np.argsort(-steps, kind="stable")
    values_desc = values[order]
    full_set, reps = _cluster_values(
        _tail(values_desc, budget.tail_fraction),
        budget.cluster_tol,
        budget.min_support,
    )
    classification = classify_set(full_set)
    return LimitSetEstimate(
        set=full_set,
        classification=classification,
        evidence=Evidence(
            method="sampling",
            samples=int(steps.size),
            seed=budget.seed,
            cluster_tol=budget.cluster_tol,
            tail_fraction=budget.tail_fraction,
            cluster_reps=reps,
            notes=notes,
        ),
    )


def _with_stability(
    est: LimitSetEstimate,
    half_steps: np.ndarray,
    half_values: np.ndarray,
    budget: SamplingBudget,
) -> LimitSetEstimate:
    order = np.argsort(-half_steps, kind="stable")
    half_set, _ = _cluster_values(
        _tail(half_values[order], budget.tail_fraction),
        budget.cluster_tol,
        budget.min_support,
    )
    if est.set.is_empty() and half_set.is_empty():
        stable, gap = True, 0.0
    elif est.set.is_empty() or half_set.is_empty():
        stable, gap = False, math.inf
    else:
        gap = hausdorff(est.set, half_set)
        stable = gap <= budget.cluster_tol
    ev = est.evidence
    return LimitSetEstimate(
        set=est.set,
        classification=est.classification,
        evidence=Evidence(
            method=ev.method,
            samples=ev.samples,
            seed=ev.seed,
            cluster_tol=ev.cluster_tol,
            tail_fraction=ev.tail_fraction,
            stable=stable,
            stability_gap=gap,
            cluster_reps=ev.cluster_reps,
            witnesses=ev.witnesses,
            notes=ev.notes,
        ),
    )


def _interval_room(f: GalleryFunction, x: float, budget: SamplingBudget, side: str):
    dom: Interval = f.domain
    room_right = dom.hi - x
    room_left = x - dom.lo
    max_right = min(budget.step_max, room_right)
    max_left = min(budget.step_max, room_left)
    need_right = side in ("right", "both")
    need_left = side in ("left", "both")
    if need_right and not max_right > budget.step_min:
        raise DomainError(f"no room on the right of x={x} within the domain")
    if need_left and not max_left > budget.step_min:
        raise DomainError(f"no room on the left of x={x} within the domain")
    return max_right, max_left


def estimate_secant_set(
    f: GalleryFunction,
    x: float,
    side: str = "both",
    budget: Optional[SamplingBudget] = None,
) -> LimitSetEstimate:
    """Estimate the set of sequential secant derivative values at x.

    Steps mix seeded log-uniform magnitudes with harmonic-progression
    probes (which pin sin(1/h)); signed per the requested side.
    """
    budget = budget or SamplingBudget()
    if side not in ("left", "right", "both"):
        raise ParamError(f"side must be left|right|both, got {side!r}")
    if not f.domain.contains(x):
        raise DomainError(f"{x!r} outside the domain of {f.name}")
    if isinstance(f.domain, DiscreteDomain):
        return _secant_discrete(f, x, side, budget)

    max_right, max_left = _interval_room(f, x, budget, side)
    rng = np.random.default_rng(budget.seed)
    comps: List[np.ndarray] = []
    if side == "both":
        n_right = budget.samples // 2
        n_left = budget.samples - n_right
    elif side == "right":
        n_right, n_left = budget.samples, 0
    else:
        n_right, n_left = 0, budget.samples
    if n_right:
        comps.extend(_secant_magnitudes(budget, max_right, n_right, rng))
    if n_left:
        comps.extend(-c for c in _secant_magnitudes(budget, max_left, n_left, rng))

    fx = f.eval(x)

    def run(parts: List[np.ndarray]):
        s = np.concatenate(parts)
        q = (f.eval_many(x + s) - fx) / s
        return np.abs(s), _cap_array(q, budget.infinity_threshold)

    steps, values = run(comps)
    est = _estimate_from_values(steps, values, budget, notes=f"secant side={side}")
    hsteps, hvalues = run(_halves(comps))
    return _with_stability(est, hsteps, hvalues, budget)


def _secant_discrete(
    f: GalleryFunction, x: float, side: str, budget: SamplingBudget
) -> LimitSetEstimate:
    if x != 0.0:
        raise DomainError("discrete-domain estimation is anchored at x = 0")
    dom: DiscreteDomain = f.domain
    comps = []
    if side in ("right", "both"):
        if not dom.h_values:
            raise DomainError("no right-side samples available")
        comps.append(np.array(dom.h_values, dtype=np.float64))
    if side in ("left", "both"):
        if not dom.k_values:
            raise DomainError("no left-side samples available")
        comps.append(-np.array(dom.k_values, dtype=np.float64))
    s = np.concatenate(comps)
    if s.size < MIN_TRACE_LEN:
        raise InsufficientDataError(
            f"discrete domain offers only {s.size} samples "
            f"(need {MIN_TRACE_LEN})"
        )
    if s.size > budget.samples:
        s = np.concatenate([c[: budget.samples // len(comps)] for c in comps])
    q = _cap_array(f.eval_many(s) / s, budget.infinity_threshold)
    est = _estimate_from_values(np.abs(s), q, budget, notes=f"secant discrete side={side}")
    half = np.concatenate([c[: max(1, c.size // 2)] for c in comps])
    qh = _cap_array(f.eval_many(half) / half, budget.infinity_threshold)
    return _with_stability(est, np.abs(half), qh, budget)


def _cord_pairs(
    budget: SamplingBudget, max_right: float, max_left: float, rng
) -> List[Tuple[np.ndarray, np.ndarray]]:
    """Component (h, k) pair arrays; prefix property as in secant
    sampling."""
    total = budget.samples
    lg = math.log10
    smin = budget.step_min
    pairs: List[Tuple[np.ndarray, np.ndarray]] = []
    # independent log-uniform pairs: ratios spread across decades
    n_rand = int(total * 0.4)
    h = 10.0 ** rng.uniform(lg(smin), lg(max_right), n_rand)
    k = 10.0 ** rng.uniform(lg(smin), lg(max_left), n_rand)
    pairs.append((h, k))
    # symmetric pairs (the classical symmetric quotient)
    n_sym = int(total * 0.15)
    u = 10.0 ** rng.uniform(lg(smin), lg(min(max_right, max_left)), n_sym)
    pairs.append((u, u))
    # power-linked pairs k = h^p and h = k^p: weights r -> 1 and r -> 0
    n_pow = int(total * 0.15)
    for p in (2.0, 3.0):
        m = min(max_right, max_left, 1e-2)
        base = 10.0 ** rng.uniform(max(lg(smin) / p, -8.0), lg(m), n_pow // 4)
        pairs.append((base, base**p))
        pairs.append((base**p, base))
    # harmonic cross probes: both sides pinned, same index
    n_struct = total - n_rand - n_sym - 4 * (n_pow // 4)
    combos = [
        (PROBE_THETAS[i], PROBE_THETAS[(i + 3) % len(PROBE_THETAS)])
        for i in range(len(PROBE_THETAS))
    ]
    per = max(8, n_struct // len(combos))
    m = min(max_right, max_left)
    for ta, tb in combos:
        hh = _harmonic_steps(ta, smin, m, per)
        kk = _harmonic_steps(tb, smin, m, per)
        n = min(hh.size, kk.size)
        if n:
            pairs.append((hh[:n], kk[:n]))
    return pairs


def estimate_cord_set(
    f: GalleryFunction,
    x: float,
    budget: Optional[SamplingBudget] = None,
) -> LimitSetEstimate:
    """Estimate the set of sequential cord derivative values at x.

    Pairs (h, k) mix independent log-uniform magnitudes, symmetric pairs,
    power-linked ratios k = h^p (p = 2, 3) in both orientations, and
    cross products of harmonic-progression probes.
    """
    budget = budget or SamplingBudget()
    if not f.domain.contains(x):
        raise DomainError(f"{x!r} outside the domain of {f.name}")
    if isinstance(f.domain, DiscreteDomain):
        return _cord_discrete(f, x, budget)

    max_right, max_left = _interval_room(f, x, budget, "both")
    rng = np.random.default_rng(budget.seed)
    pairs = _cord_pairs(budget, max_right, max_left, rng)

    def run(parts):
        h = np.concatenate([p[0] for p in parts])
        k = np.concatenate([p[1] for p in parts])
        q = (f.eval_many(x + h) - f.eval_many(x - k)) / (h + k)
        return np.maximum(h, k), _cap_array(q, budget.infinity_threshold)

    steps, values = run(pairs)
    est = _estimate_from_values(steps, values, budget, notes="cord")
    half = [(p[0][: max(1, p[0].size // 2)], p[1][: max(1, p[1].size // 2)]) for p in pairs]
    hsteps, hvalues = run(half)
    return _with_stability(est, hsteps, hvalues, budget)


def _cord_discrete(
    f: GalleryFunction, x: float, budget: SamplingBudget
) -> LimitSetEstimate:
    if x != 0.0:
        raise DomainError("discrete-domain estimation is anchored at x = 0")
    dom: DiscreteDomain = f.domain
    hv = np.array(dom.h_values, dtype=np.float64)
    kv = np.array(dom.k_values, dtype=np.float64)
    if hv.size == 0 or kv.size == 0:
        raise DomainError("cord estimation needs samples on both sides")

    def window_pairs(n_target: int):
        # square window over the smallest terms plus ratio bands: covers
        # both balanced and extreme index ratios
        w = max(2, math.isqrt(n_target // 2))
        wh, wk = min(w, hv.size), min(w, kv.size)
        ii, jj = np.meshgrid(
            np.arange(hv.size - wh, hv.size), np.arange(kv.size - wk, kv.size)
        )
        idx_i = [ii.ravel()]
        idx_j = [jj.ravel()]
        n_band = n_target // 2
        ratios = np.geomspace(0.02, 50.0, 41)
        per = max(4, n_band // ratios.size)
        for rho in ratios:
            j = np.arange(max(kv.size - per, 0), kv.size)
            i = np.clip(np.rint(j * rho), 0, hv.size - 1).astype(int)
            idx_i.append(i)
            idx_j.append(j)
        return np.concatenate(idx_i), np.concatenate(idx_j)

    def run(n_target):
        i, j = window_pairs(n_target)
        h = hv[i]
        k = kv[j]
        q = (f.eval_many(h) - f.eval_many(-k)) / (h + k)
        return np.maximum(h, k), _cap_array(q, budget.infinity_threshold)

    steps, values = run(budget.samples)
    if steps.size < MIN_TRACE_LEN:
        raise InsufficientDataError(
            f"discrete domain yields only {steps.size} pairs (need {MIN_TRACE_LEN})"
        )
    est = _estimate_from_values(steps, values, budget, notes="cord discrete")
    hsteps, hvalues = run(budget.samples // 2)
    return _with_stability(est, hsteps, hvalues, budget)


def target_cord(
    f: GalleryFunction,
    x: float,
    K: float,
    tol: float,
    endpoints: Tuple[Tuple[float, float], Tuple[float, float]],
    max_iter: int = 200,
    infinity_threshold: float = DEFAULT_INFINITY_THRESHOLD,
) -> Tuple[float, float]:
    """Find (h, k) whose cord quotient at x hits K within tol.

    Walks the straight-line path between two witness pairs whose quotient
    values bracket K; continuity of f makes the quotient continuous along
    the path, so sign bisection converges.  If a witness endpoint already
    achieves K within tol it is returned as-is (this covers targets at
    the boundary of the attainable range, where no strict bracket
    exists).
    """
    if not tol > 0:
        raise ParamError("tol must be positive")
    if not f.is_continuous:
        raise ParamError("target_cord requires a continuous function")
    (h0, k0), (h1, k1) = endpoints
    if not (h0 > 0 and k0 > 0 and h1 > 0 and k1 > 0):
        raise ParamError("witness steps must be positive")
    q0 = cord_quotient(f, x, h0, k0, infinity_threshold)
    q1 = cord_quotient(f, x, h1, k1, infinity_threshold)
    if abs(q0 - K) <= tol:
        return (h0, k0)
    if abs(q1 - K) <= tol:
        return (h1, k1)
    if not (min(q0, q1) < K < max(q0, q1)):
        raise BracketError(
            f"witness quotients {q0!r} and {q1!r} do not bracket K={K!r}"
        )
    lo_t, hi_t = 0.0, 1.0
    sign_lo = -1.0 if q0 < K else 1.0
    for _ in range(max_iter):
        t = 0.5 * (lo_t + hi_t)
        h = (1.0 - t) * h0 + t * h1
        k = (1.0 - t) * k0 + t * k1
        q = cord_quotient(f, x, h, k, infinity_threshold)
        if abs(q - K) <= tol:
            return (h, k)
        if ((q < K) and sign_lo < 0) or ((q > K) and sign_lo > 0):
            lo_t = t
        else:
            hi_t = t
    raise SearchFailureError(
        f"no (h, k) with |quotient - {K}| <= {tol} after {max_iter} bisections"
    )


def poly_weight(a: float, b: float, m: float, i: int, j: int) -> float:
    """Limit weight r for index maps (i*n, j*n) under polynomial decay
    rates p(n) ~ a*n^m and q(n) ~ b*n^m."""
    jm = float(j) ** m * b
    return jm / (jm + float(i) ** m * a)


@dataclass(frozen=True)
class PolyPrediction:
    """Weight grid and limit values for polynomial decay rates."""

    weights: tuple        # r values, (i, j) grid in lexicographic order
    pairs: tuple          # matching (i, j) tuples
    limits: ClosedExtSet  # closure of attained limit values
    max_gap: float        # largest gap between consecutive limits
    delta: float          # margin excluded at both ends for the gap scan

    def to_json_obj(self) -> dict:
        return {
            "weights": list(self.weights),
            "pairs": [list(p) for p in self.pairs],
            "limits": self.limits.to_json_obj(),
            "max_gap": self.max_gap,
            "delta": self.delta,
        }


def predict_poly(
    a: float,
    b: float,
    m: float,
    R: float,
    L: float,
    i_max: int = 40,
    j_max: int = 40,
    delta_frac: float = 0.05,
) -> PolyPrediction:
    """Analytic cord limit values for polynomial decay rates.

    Enumerates the weights r = j^m b / (j^m b + i^m a) over the index
    grid and the induced limits r*R + (1-r)*L; the closure adds the
    endpoint values R and L themselves.  Reports the largest gap between
    consecutive limits away from the endpoints (margin delta).
    """
    if not (a > 0 and b > 0 and m > 0):
        raise ParamError("predict_poly needs a, b, m > 0")
    if i_max < 1 or j_max < 1:
        raise ParamError("index bounds must be >= 1")
    weights = []
    pairs = []
    for i in range(1, i_max + 1):
        for j in range(1, j_max + 1):
            weights.append(poly_weight(a, b, m, i, j))
            pairs.append((i, j))
    values = [r * R + (1.0 - r) * L for r in weights]
    limits = ClosedExtSet.from_values(values + [R, L])
    lo = min(L, R)
    hi = max(L, R)
    delta = delta_frac * (hi - lo)
    inside = sorted(v for v in set(values) if lo + delta <= v <= hi - delta)
    max_gap = 0.0
    for u, v in zip(inside, inside[1:]):
        max_gap = max(max_gap, v - u)
    return PolyPrediction(
        weights=tuple(weights),
        pairs=tuple(pairs),
        limits=limits,
        max_gap=max_gap,
        delta=delta,
    )


def predict_exp(
    a: float,
    b: float,
    R: float,
    L: float,
    t_range: Tuple[int, int] = (-24, 24),
    exp_bound: int = 64,
    witness_targets: Sequence[float] = (0.1, 0.25, 0.5, 0.75, 0.9),
    witness_eps: float = 1e-3,
    i_bound: int = dioph.DEFAULT_I_BOUND,
) -> LimitSetEstimate:
    """Analytic cord limit structure for exponential decay rates a^-n,
    b^-n.

    Commensurable logs (a^q = b^p) give the discrete ratio lattice
    r_t = 1/(1 + beta^t), beta = b^(1/q), with accumulation only at R and
    L; otherwise the limits fill [min(L,R), max(L,R)] and integer
    witnesses realizing sample targets are attached as evidence.
    """
    if not (a > 1 and b > 1):
        raise ParamError("predict_exp needs a > 1 and b > 1")
    t_lo, t_hi = int(t_range[0]), int(t_range[1])
    if t_hi < t_lo:
        raise ParamError("t_range must be nondecreasing")
    if R == L:
        return LimitSetEstimate(
            set=ClosedExtSet.from_values([R]),
            classification="single_point",
            evidence=Evidence(method="analytic", notes="R = L: all limits coincide"),
        )
    rel = dioph.rational_check(a, b, exp_bound)
    if rel.is_rational:
        beta = b ** (1.0 / rel.q)
        log_beta = math.log(beta)
        values = [R, L]
        for t in range(t_lo, t_hi + 1):
            if t * log_beta > 700.0:
                r = 0.0
            elif t * log_beta < -700.0:
                r = 1.0
            else:
                r = 1.0 / (1.0 + beta**t)
            values.append(r * R + (1.0 - r) * L)
        note = (
            f"log({a:g})/log({b:g}) = {rel.p}/{rel.q} "
            f"({'exact' if rel.exact else rel.note}); "
            f"beta = {beta:g}, lattice t in [{t_lo}, {t_hi}]; "
            f"accumulation only at R and L"
        )
        return LimitSetEstimate(
            set=ClosedExtSet.from_values(values),
            classification="discrete_with_accumulation",
            evidence=Evidence(method="analytic", notes=note),
        )
    alpha = dioph.log_ratio(a, b)
    log_b = math.log(b)
    witnesses = []
    for r_target in witness_targets:
        if not 0.0 < r_target < 1.0:
            raise ParamError("witness targets must lie in (0, 1)")
        s = (1.0 - r_target) / r_target
        t_val = math.log(s) / log_b
        slope = log_b * r_target * (1.0 - r_target)  # |dr/dt|
        w = dioph.approx_target(alpha, t_val, witness_eps / slope, i_bound)
        obj = w.to_json_obj()
        obj["target_r"] = r_target
        if w.found:
            induced = 1.0 / (1.0 + b**w.achieved)
            obj["induced_r"] = induced
            obj["induced_error"] = abs(induced - r_target)
        witnesses.append(obj)
    lo, hi = min(L, R), max(L, R)
    note = (
        f"no relation a^q = b^p with p, q <= {exp_bound}: treating "
        "log(a)/log(b) as incommensurable, limits fill the interval"
    )
    return LimitSetEstimate(
        set=ClosedExtSet.canonical(intervals=[(lo, hi)]),
        classification="closed_interval",
        evidence=Evidence(method="analytic", witnesses=tuple(witnesses), notes=note),
    )
