"""Verification suite: executable checks for the package's core claims.

Each check exercises one guaranteed behavior end to end (differentiable
control, interval-filling, inclusion, rate laws, lattice structure,
witness search, unboundedness, primitive invariants, reproducibility)
and returns a structured pass/fail result with the measured quantities.
Reports contain no wall-clock data, so identical configurations produce
byte-identical output.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

import mpmath
import numpy as np

from . import dioph
from .errors import UsageError
from .extreal import (
    ClosedExtSet,
    POS_INF,
    NEG_INF,
    directed_hausdorff,
    hausdorff,
    normalize,
)
from .gallery import (
    GalleryFunction,
    Interval,
    build,
    continuous_two_sided_at_zero,
    make_two_slope,
)
from .limitset import (
    SamplingBudget,
    estimate_cord_set,
    estimate_secant_set,
    poly_weight,
    target_cord,
)
from .quotient import cord_quotient, decompose
from .seqgen import ExponentialDecay, power_decay


@dataclass(frozen=True)
class CheckResult:
    check_id: int
    slug: str
    passed: bool
    details: dict

    def to_json_obj(self) -> dict:
        return {
            "id": self.check_id,
            "slug": self.slug,
            "passed": self.passed,
            "details": self.details,
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.check_id:2d} {self.slug}"


def check_differentiable(seed: int = 0) -> CheckResult:
    """Cord quotients of a differentiable function converge to the
    derivative: 100 seeded random decreasing pairs for sin at 0.3, with
    error at most 1e-6 once both steps are at most 1e-7."""
    rng = np.random.default_rng(seed)
    h = np.sort(10.0 ** rng.uniform(-9.0, -4.0, 100))[::-1]
    k = np.sort(10.0 ** rng.uniform(-9.0, -4.0, 100))[::-1]
    x = 0.3
    q = (np.sin(x + h) - np.sin(x - k)) / (h + k)
    err = np.abs(q - math.cos(x))
    small = (h <= 1e-7) & (k <= 1e-7)
    n_small = int(np.count_nonzero(small))
    max_err = float(np.max(err[small])) if n_small else math.inf
    passed = n_small >= 20 and max_err <= 1e-6
    return CheckResult(
        1,
        "differentiable",
        passed,
        {
            "x": x,
            "pairs": 100,
            "pairs_below_1e-7": n_small,
            "max_error_below_1e-7": max_err,
            "tolerance": 1e-6,
        },
    )


def check_abs_cord(seed: int = 0, samples: int = 100_000) -> CheckResult:
    """The cord set of |x| at 0: every target in a 0.1-grid of [-1, 1]
    is hit by a solved (h, k) pair to 1e-9, and the sampled estimate is
    within chart-Hausdorff 0.02 of [-1, 1]."""
    f = build("abs")
    endpoints = ((1e-2, 1e-13), (1e-13, 1e-2))
    worst_target = 0.0
    for K in np.linspace(-1.0, 1.0, 21):
        K = float(K)
        h, k = target_cord(f, 0.0, K, 1e-9, endpoints)
        achieved = cord_quotient(f, 0.0, h, k)
        worst_target = max(worst_target, abs(achieved - K))
    est = estimate_cord_set(f, 0.0, SamplingBudget(samples=samples, seed=seed))
    target_set = ClosedExtSet.canonical(intervals=[(-1.0, 1.0)])
    dist = hausdorff(est.set, target_set)
    passed = worst_target <= 1e-9 and dist <= 0.02
    return CheckResult(
        2,
        "abs-cord",
        passed,
        {
            "solver_worst_error": worst_target,
            "solver_tolerance": 1e-9,
            "estimate_hausdorff": dist,
            "estimate_tolerance": 0.02,
            "classification": est.classification,
        },
    )


def check_envelope_secant(seed: int = 0, samples: int = 100_000) -> CheckResult:
    """The right secant set of the sine envelope with bounds (-1, 2) at
    0 fills [-1, 2]: sampled estimate within chart-Hausdorff 0.05."""
    f = build("sine_envelope:a=-1,b=2")
    est = estimate_secant_set(
        f, 0.0, side="right", budget=SamplingBudget(samples=samples, seed=seed)
    )
    target = ClosedExtSet.canonical(intervals=[(-1.0, 2.0)])
    dist = hausdorff(est.set, target)
    passed = dist <= 0.05
    return CheckResult(
        3,
        "envelope-secant",
        passed,
        {
            "hausdorff": dist,
            "tolerance": 0.05,
            "classification": est.classification,
            "stable": est.evidence.stable,
        },
    )


def check_secant_in_cord(seed: int = 0, samples: int = 100_000) -> CheckResult:
    """Secant limits are cord limits: for every continuous two-sided
    gallery function at 0, the estimated secant set lies within chart
    distance 0.02 of the estimated cord set."""
    budget = SamplingBudget(samples=samples, seed=seed)
    per_fn = {}
    worst = 0.0
    for f in continuous_two_sided_at_zero():
        es = estimate_secant_set(f, 0.0, side="both", budget=budget)
        ec = estimate_cord_set(f, 0.0, budget=budget)
        d = directed_hausdorff(es.set, ec.set)
        per_fn[f.name] = d
        worst = max(worst, d)
    passed = worst <= 0.02
    return CheckResult(
        4,
        "secant-in-cord",
        passed,
        {"max_excess": worst, "tolerance": 0.02, "per_function": per_fn},
    )


def check_poly_rates() -> CheckResult:
    """Polynomial decay rates 1/n^2 and 1/(3 n^2) with slopes R=1, L=0:
    the weight at i=j=1 is exactly 3/4, consecutive-j weight gaps stay
    below 1/(2j), and every target in a 0.05-grid of [0.1, 0.9] is
    realized by an index pair to 1e-3."""
    a, b, m = 1.0, 3.0, 2.0
    w11 = poly_weight(a, b, m, 1, 1)
    exact_ok = w11 == 0.75
    gap_ok = True
    worst_gap_margin = math.inf
    for i in range(1, 41):
        for j in range(1, 40):
            gap = abs(poly_weight(a, b, m, i, j + 1) - poly_weight(a, b, m, i, j))
            bound = 1.0 / (2.0 * j)
            worst_gap_margin = min(worst_gap_margin, bound - gap)
            if gap > bound:
                gap_ok = False
    f = make_two_slope(1.0, 0.0, power_decay(2.0, 1.0), power_decay(2.0, 3.0))
    worst_hit = 0.0
    for K in np.arange(0.10, 0.9001, 0.05):
        K = float(K)
        ratio = Fraction(math.sqrt(3.0 * (1.0 - K) / K)).limit_denominator(200)
        i, j = ratio.numerator, ratio.denominator
        n = max(1, 4096 // max(i, j))
        q = cord_quotient(f, 0.0, 1.0 / (i * n) ** 2, 1.0 / (3.0 * (j * n) ** 2))
        worst_hit = max(worst_hit, abs(q - K))
    passed = exact_ok and gap_ok and worst_hit <= 1e-3
    return CheckResult(
        5,
        "poly-rates",
        passed,
        {
            "weight_1_1": w11,
            "weight_1_1_exact": exact_ok,
            "gap_bound_ok": gap_ok,
            "worst_gap_margin": worst_gap_margin,
            "grid_worst_error": worst_hit,
            "grid_tolerance": 1e-3,
        },
    )


def check_exp_rational(
    a: float = 2.0, b: float = 4.0, seed: int = 0, samples: int = 100_000
) -> CheckResult:
    """Exponential decay rates with commensurable logs (default a=2,
    b=4): every empirical cord limit of the two-slope function sits
    within 1e-6 of the ratio lattice {1/(1+beta^t)} plus {0, 1}, and
    none falls in the open gap between the lattice points 1/3 and 1/2."""
    rel = dioph.rational_check(a, b)
    if not rel.is_rational:
        return CheckResult(
            6,
            "exp-rational",
            False,
            {"error": f"no small power relation between {a} and {b}"},
        )
    beta = b ** (1.0 / rel.q)
    f = make_two_slope(1.0, 0.0, ExponentialDecay(a), ExponentialDecay(b))
    est = estimate_cord_set(f, 0.0, SamplingBudget(samples=samples, seed=seed))
    lattice = []
    for t in range(-200, 201):
        lt = t * math.log(beta)
        if abs(lt) < 700.0:
            lattice.append(1.0 / (1.0 + math.exp(lt)))
    reps = est.evidence.cluster_reps
    worst_off = 0.0
    for r in reps:
        d = min(min(abs(r - v) for v in lattice), abs(r), abs(1.0 - r))
        worst_off = max(worst_off, d)
    gap_lo, gap_hi = 1.0 / 3.0 + 1e-3, 0.5 - 1e-3
    in_gap = [r for r in reps if gap_lo < r < gap_hi]
    set_in_gap = any(
        lo < gap_hi and hi > gap_lo for lo, hi in est.set.intervals
    ) or any(gap_lo < p < gap_hi for p in est.set.points)
    passed = worst_off <= 1e-6 and not in_gap and not set_in_gap
    return CheckResult(
        6,
        "exp-rational",
        passed,
        {
            "a": a,
            "b": b,
            "beta": beta,
            "n_limits": len(reps),
            "worst_lattice_distance": worst_off,
            "lattice_tolerance": 1e-6,
            "limits_in_gap": in_gap,
            "set_touches_gap": set_in_gap,
        },
    )


def check_exp_irrational(
    a: float = 2.0, b: float = 3.0, target: float = 0.4
) -> CheckResult:
    """Exponential decay rates with incommensurable logs (default a=2,
    b=3): the witness search finds an index pair with i at most 1e4
    whose induced cord limit is within 1e-3 of the target 0.4."""
    alpha = dioph.log_ratio(a, b)
    s_target = (1.0 - target) / target
    t_star = math.log(s_target) / math.log(b)
    w = dioph.approx_target(alpha, t_star, 3e-3, i_bound=10_000)
    if not w.found:
        return CheckResult(
            7, "exp-irrational", False, {"error": "no witness found", "a": a, "b": b}
        )
    induced = 1.0 / (1.0 + b ** float(w.achieved))
    err = abs(induced - target)
    # literal quotient at the witness steps agrees with the induced value
    f = make_two_slope(1.0, 0.0, ExponentialDecay(a), ExponentialDecay(b))
    q = cord_quotient(f, 0.0, a ** float(-w.i), b ** float(-w.j))
    passed = w.i <= 10_000 and err <= 1e-3 and abs(q - induced) <= 1e-9
    return CheckResult(
        7,
        "exp-irrational",
        passed,
        {
            "a": a,
            "b": b,
            "target": target,
            "i": w.i,
            "j": w.j,
            "induced_limit": induced,
            "induced_error": err,
            "tolerance": 1e-3,
            "quotient_at_witness": q,
        },
    )


def check_weier_unbounded(seed: int = 0, per_decade: int = 4000) -> CheckResult:
    """Quotient magnitudes of the default Weierstrass function at 0 grow
    as the step shrinks: per-decade suprema are nondecreasing for decades
    2..7 and exceed 100 by decade 7."""
    f = build("weierstrass")
    w0 = f.eval(0.0)
    rng = np.random.default_rng(seed)
    sups = []
    for d in range(2, 8):
        grid = np.geomspace(10.0 ** -(d + 1), 10.0**-d, per_decade)
        rand = 10.0 ** rng.uniform(-(d + 1), -d, per_decade)
        hs = np.concatenate([grid, rand])
        q = (f.eval_many(hs) - w0) / hs
        sups.append(float(np.max(np.abs(q))))
    nondecreasing = all(u <= v for u, v in zip(sups, sups[1:]))
    passed = nondecreasing and sups[-1] > 100.0
    return CheckResult(
        8,
        "weier-unbounded",
        passed,
        {
            "decades": list(range(2, 8)),
            "suprema": sups,
            "nondecreasing": nondecreasing,
            "final_exceeds": 100.0,
        },
    )


def _random_set(rng) -> ClosedExtSet:
    intervals = []
    points = []
    for _ in range(rng.integers(0, 3)):
        lo = float(rng.uniform(-50.0, 50.0))
        hi = lo + float(rng.uniform(1e-6, 30.0))
        intervals.append((lo, hi))
    for _ in range(rng.integers(0, 4)):
        points.append(float(rng.uniform(-50.0, 50.0)))
    if rng.uniform() < 0.1:
        points.append(POS_INF)
    if rng.uniform() < 0.1:
        points.append(NEG_INF)
    if not intervals and not points:
        points.append(float(rng.uniform(-50.0, 50.0)))
    return ClosedExtSet.canonical(intervals, points)


def check_primitives(seed: int = 0) -> CheckResult:
    """Invariants of the numeric primitives: normalization idempotence,
    the metric axioms of the set distance on random triples, the
    quotient decomposition identity to 4 ulps, and sign alternation of
    continued-fraction convergents."""
    rng = np.random.default_rng(seed)
    idem_ok = True
    for _ in range(1000):
        s = _random_set(rng)
        t = normalize(s)
        if normalize(t) != t:
            idem_ok = False
            break
    metric_ok = True
    worst_triangle = -math.inf
    for _ in range(1000):
        A, B, C = _random_set(rng), _random_set(rng), _random_set(rng)
        dab, dba = hausdorff(A, B), hausdorff(B, A)
        if dab != dba or hausdorff(A, A) != 0.0 or dab < 0:
            metric_ok = False
            break
        slack = hausdorff(A, B) + hausdorff(B, C) - hausdorff(A, C)
        worst_triangle = max(worst_triangle, -slack)
        if slack < -1e-12:
            metric_ok = False
            break
    # decomposition identity on random smooth functions and step pairs
    eps = 2.0**-52
    decomp_ok = True
    worst_ulps = 0.0
    for _ in range(100):
        c = rng.uniform(-2.0, 2.0, 4)

        def fn(x, c=c):
            return c[0] * x + c[1] * x * x + c[2] * math.sin(10.0 * x) + c[3] * x**3

        g = GalleryFunction(name="poly_mix", domain=Interval(NEG_INF, POS_INF), fn=fn)
        for _ in range(100):
            h = 10.0 ** float(rng.uniform(-12.0, -0.5))
            k = 10.0 ** float(rng.uniform(-12.0, -0.5))
            r, rq, lq = decompose(g, h, k)
            # the complementary weight is k/(h+k); computing it as 1-r
            # would shed its low bits whenever r is close to 1
            rbar = k / (h + k)
            lhs = cord_quotient(g, 0.0, h, k)
            rhs = r * rq + rbar * lq
            scale = max(abs(lhs), abs(r * rq), abs(rbar * lq), 1e-300)
            ulps = abs(lhs - rhs) / (eps * scale)
            worst_ulps = max(worst_ulps, ulps)
            if ulps > 4.0:
                decomp_ok = False
    # convergents of irrational numbers alternate around the value
    alt_ok = True
    with mpmath.workprec(120):
        for alpha in (mpmath.sqrt(2), mpmath.pi, mpmath.log(2) / mpmath.log(3)):
            quotients = dioph.continued_fraction(alpha, 20)
            convs = dioph.convergents(quotients)
            signs = [mpmath.sign(mpmath.mpf(c.numerator) / c.denominator - alpha) for c in convs]
            for u, v in zip(signs, signs[1:]):
                if not (u != v and u != 0):
                    alt_ok = False
    passed = idem_ok and metric_ok and decomp_ok and alt_ok
    return CheckResult(
        9,
        "primitives",
        passed,
        {
            "normalize_idempotent": idem_ok,
            "metric_axioms": metric_ok,
            "worst_triangle_violation": worst_triangle,
            "decomposition_ok": decomp_ok,
            "worst_decomposition_ulps": worst_ulps,
            "convergents_alternate": alt_ok,
        },
    )


def check_repro(seed: int = 0) -> CheckResult:
    """Determinism: a sampling estimate and a set of fast checks, run
    twice with the same seed, serialize to identical bytes.  (The
    command-line suite applies the same comparison to the full report.)"""
    f = build("abs")

    def snapshot() -> str:
        est = estimate_cord_set(f, 0.0, SamplingBudget(samples=5000, seed=seed))
        sub = [check_differentiable(seed), check_poly_rates(), check_exp_irrational()]
        payload = {
            "estimate": est.to_json_obj(),
            "checks": [c.to_json_obj() for c in sub],
        }
        return json.dumps(payload, sort_keys=True)

    first = snapshot()
    second = snapshot()
    passed = first == second
    return CheckResult(
        10,
        "repro",
        passed,
        {"bytes": len(first), "identical": passed},
    )


CHECKS: Dict[str, Callable[..., CheckResult]] = {
    "differentiable": check_differentiable,
    "abs-cord": check_abs_cord,
    "envelope-secant": check_envelope_secant,
    "secant-in-cord": check_secant_in_cord,
    "poly-rates": check_poly_rates,
    "exp-rational": check_exp_rational,
    "exp-irrational": check_exp_irrational,
    "weier-unbounded": check_weier_unbounded,
    "primitives": check_primitives,
    "repro": check_repro,
}

_SLUG_BY_ID = {i + 1: slug for i, slug in enumerate(CHECKS)}


def resolve_suite(name: str) -> List[str]:
    """Suite selector: 'all', a check slug, or a check number."""
    name = name.strip().lower()
    if name == "all":
        return list(CHECKS)
    if name in CHECKS:
        return [name]
    if name.isdigit() and int(name) in _SLUG_BY_ID:
        return [_SLUG_BY_ID[int(name)]]
    raise UsageError(
        f"unknown suite {name!r}; choose from: all, "
        + ", ".join(f"{i}={s}" for i, s in _SLUG_BY_ID.items())
    )


def run_suite(
    suite: str = "all",
    seed: int = 0,
    samples: int = 100_000,
    a: Optional[float] = None,
    b: Optional[float] = None,
) -> List[CheckResult]:
    """Run the selected checks and return their results in order."""
    results = []
    for slug in resolve_suite(suite):
        fn = CHECKS[slug]
        kwargs = {}
        if slug in ("differentiable", "weier-unbounded", "primitives", "repro"):
            kwargs = {"seed": seed}
        elif slug in ("abs-cord", "envelope-secant", "secant-in-cord"):
            kwargs = {"seed": seed, "samples": samples}
        elif slug == "exp-rational":
            kwargs = {"seed": seed, "samples": samples}
            if a is not None:
                kwargs["a"] = a
            if b is not None:
                kwargs["b"] = b
        elif slug == "exp-irrational":
            if a is not None:
                kwargs["a"] = a
            if b is not None:
                kwargs["b"] = b
        results.append(fn(**kwargs))
    return results
