"""Acceptance gate: ten end-to-end behavior checks at fixed tolerances.

Each test prints one PASS/FAIL line with the measured quantities and its
wall time, then asserts the stated bounds, including the runtime budget.
"""

import json
import math
import subprocess
import sys
import time
from fractions import Fraction

import mpmath
import numpy as np

from seqderiv import dioph
from seqderiv.extreal import (
    NEG_INF,
    POS_INF,
    ClosedExtSet,
    directed_hausdorff,
    hausdorff,
    normalize,
)
from seqderiv.gallery import (
    GalleryFunction,
    Interval,
    build,
    continuous_two_sided_at_zero,
    make_two_slope,
)
from seqderiv.limitset import (
    SamplingBudget,
    estimate_cord_set,
    estimate_secant_set,
    poly_weight,
    target_cord,
)
from seqderiv.quotient import cord_quotient, decompose
from seqderiv.seqgen import ExponentialDecay, power_decay

BUDGET = SamplingBudget(samples=100_000, seed=0)


def report(num: int, ok: bool, detail: str, elapsed: float) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"{status} criterion {num:2d}: {detail} [{elapsed:.2f}s]")


def test_criterion_01_differentiable_control():
    t0 = time.monotonic()
    f = build("sin")
    x = 0.3
    rng = np.random.default_rng(0)
    h = np.sort(10.0 ** rng.uniform(-9.0, -4.0, 100))[::-1]
    k = np.sort(10.0 ** rng.uniform(-9.0, -4.0, 100))[::-1]
    errs = [
        abs(cord_quotient(f, x, float(hi), float(ki)) - math.cos(x))
        for hi, ki in zip(h, k)
        if hi <= 1e-7 and ki <= 1e-7
    ]
    elapsed = time.monotonic() - t0
    ok = len(errs) >= 20 and max(errs) <= 1e-6 and elapsed < 1.0
    report(
        1,
        ok,
        f"sin at 0.3, {len(errs)} pairs below 1e-7, max error {max(errs):.2e} <= 1e-6",
        elapsed,
    )
    assert len(errs) >= 20
    assert max(errs) <= 1e-6
    assert elapsed < 1.0


def test_criterion_02_abs_cord_interval():
    t0 = time.monotonic()
    f = build("abs")
    endpoints = ((1e-2, 1e-13), (1e-13, 1e-2))
    worst = 0.0
    for K in np.linspace(-1.0, 1.0, 21):
        K = float(K)
        h, k = target_cord(f, 0.0, K, 1e-9, endpoints)
        worst = max(worst, abs(cord_quotient(f, 0.0, h, k) - K))
    est = estimate_cord_set(f, 0.0, BUDGET)
    dist = hausdorff(est.set, ClosedExtSet.canonical(intervals=[(-1.0, 1.0)]))
    elapsed = time.monotonic() - t0
    ok = worst <= 1e-9 and dist <= 0.02 and elapsed < 5.0
    report(
        2,
        ok,
        f"abs targets worst {worst:.2e} <= 1e-9, estimate within {dist:.4f} <= 0.02",
        elapsed,
    )
    assert worst <= 1e-9
    assert dist <= 0.02
    assert elapsed < 5.0


def test_criterion_03_envelope_secant_interval():
    t0 = time.monotonic()
    f = build("sine_envelope:a=-1,b=2")
    est = estimate_secant_set(f, 0.0, side="right", budget=BUDGET)
    dist = hausdorff(est.set, ClosedExtSet.canonical(intervals=[(-1.0, 2.0)]))
    elapsed = time.monotonic() - t0
    ok = dist <= 0.05 and elapsed < 10.0
    report(
        3,
        ok,
        f"sine_envelope(-1,2) right secant set within {dist:.4f} <= 0.05 of [-1,2]",
        elapsed,
    )
    assert dist <= 0.05
    assert elapsed < 10.0


def test_criterion_04_secant_clusters_inside_cord_set():
    t0 = time.monotonic()
    worst = 0.0
    worst_fn = ""
    n_clusters = 0
    for f in continuous_two_sided_at_zero():
        es = estimate_secant_set(f, 0.0, side="both", budget=BUDGET)
        ec = estimate_cord_set(f, 0.0, budget=BUDGET)
        reps = es.evidence.cluster_reps or tuple(es.set.points)
        assert reps, f"{f.name}: secant estimate produced no clusters"
        for rep in reps:
            d = directed_hausdorff(
                ClosedExtSet.canonical(points=[float(rep)]), ec.set
            )
            n_clusters += 1
            if d > worst:
                worst, worst_fn = d, f.name
        d_set = directed_hausdorff(es.set, ec.set)
        if d_set > worst:
            worst, worst_fn = d_set, f.name
    elapsed = time.monotonic() - t0
    ok = worst <= 0.02 and elapsed < 60.0
    report(
        4,
        ok,
        f"{n_clusters} secant clusters across the gallery, "
        f"max distance to cord set {worst:.4f} <= 0.02 (worst: {worst_fn})",
        elapsed,
    )
    assert worst <= 0.02
    assert elapsed < 60.0


def test_criterion_05_polynomial_rate_weights():
    t0 = time.monotonic()
    a, b, m = 1.0, 3.0, 2.0
    w11 = poly_weight(a, b, m, 1, 1)
    exact = w11 == 0.75
    worst_gap_excess = -math.inf
    for i in range(1, 41):
        for j in range(1, 40):
            gap = abs(poly_weight(a, b, m, i, j + 1) - poly_weight(a, b, m, i, j))
            worst_gap_excess = max(worst_gap_excess, gap - 1.0 / (2.0 * j))
    f = make_two_slope(1.0, 0.0, power_decay(2.0, 1.0), power_decay(2.0, 3.0))
    worst_hit = 0.0
    for K in np.arange(0.10, 0.9001, 0.05):
        K = float(K)
        ratio = Fraction(math.sqrt(3.0 * (1.0 - K) / K)).limit_denominator(200)
        i, j = ratio.numerator, ratio.denominator
        n = max(1, 4096 // max(i, j))
        q = cord_quotient(f, 0.0, 1.0 / (i * n) ** 2, 1.0 / (3.0 * (j * n) ** 2))
        worst_hit = max(worst_hit, abs(q - K))
    elapsed = time.monotonic() - t0
    ok = exact and worst_gap_excess <= 0.0 and worst_hit <= 1e-3 and elapsed < 10.0
    report(
        5,
        ok,
        f"w(1,1)={w11} exact, gaps within 1/(2j) (max excess {worst_gap_excess:.2e}),"
        f" grid worst error {worst_hit:.2e} <= 1e-3",
        elapsed,
    )
    assert exact
    assert worst_gap_excess <= 0.0
    assert worst_hit <= 1e-3
    assert elapsed < 10.0


def test_criterion_06_exponential_rational_lattice():
    t0 = time.monotonic()
    f = make_two_slope(1.0, 0.0, ExponentialDecay(2.0), ExponentialDecay(4.0))
    est = estimate_cord_set(f, 0.0, BUDGET)
    lattice = [1.0 / (1.0 + 2.0**t) for t in range(-60, 61)]
    reps = est.evidence.cluster_reps
    worst = max(
        min(min(abs(r - v) for v in lattice), abs(r), abs(1.0 - r)) for r in reps
    )
    gap_lo, gap_hi = 1.0 / 3.0 + 1e-3, 0.5 - 1e-3
    in_gap = [r for r in reps if gap_lo < r < gap_hi]
    set_in_gap = any(
        lo < gap_hi and hi > gap_lo for lo, hi in est.set.intervals
    ) or any(gap_lo < p < gap_hi for p in est.set.points)
    elapsed = time.monotonic() - t0
    ok = worst <= 1e-6 and not in_gap and not set_in_gap and elapsed < 5.0
    report(
        6,
        ok,
        f"{len(reps)} empirical limits within {worst:.2e} <= 1e-6 of the"
        f" 2^t lattice, gap (1/3,1/2) empty: {not in_gap and not set_in_gap}",
        elapsed,
    )
    assert worst <= 1e-6
    assert not in_gap
    assert not set_in_gap
    assert elapsed < 5.0


def test_criterion_07_exponential_irrational_witness():
    t0 = time.monotonic()
    a, b, K = 2.0, 3.0, 0.4
    alpha = dioph.log_ratio(a, b)
    t_star = math.log((1.0 - K) / K) / math.log(b)
    w = dioph.approx_target(alpha, t_star, 3e-3, i_bound=10_000)
    induced = 1.0 / (1.0 + b ** float(w.achieved)) if w.found else math.inf
    err = abs(induced - K)
    elapsed = time.monotonic() - t0
    ok = w.found and w.i <= 10_000 and err <= 1e-3 and elapsed < 1.0
    report(
        7,
        ok,
        f"witness (i={w.i}, j={w.j}) induces limit {induced:.6f},"
        f" error {err:.2e} <= 1e-3",
        elapsed,
    )
    assert w.found
    assert w.i <= 10_000
    assert err <= 1e-3
    assert elapsed < 1.0


def test_criterion_08_weierstrass_unbounded_quotients():
    t0 = time.monotonic()
    f = build("weierstrass")
    w0 = f.eval(0.0)
    rng = np.random.default_rng(0)
    sups = []
    for d in range(2, 8):
        grid = np.geomspace(10.0 ** -(d + 1), 10.0**-d, 4000)
        rand = 10.0 ** rng.uniform(-(d + 1), -d, 4000)
        hs = np.concatenate([grid, rand])
        q = (f.eval_many(hs) - w0) / hs
        sups.append(float(np.max(np.abs(q))))
    nondecreasing = all(u <= v for u, v in zip(sups, sups[1:]))
    elapsed = time.monotonic() - t0
    ok = nondecreasing and sups[-1] > 100.0 and elapsed < 30.0
    report(
        8,
        ok,
        f"per-decade quotient suprema {['%.3g' % s for s in sups]}"
        f" nondecreasing, final {sups[-1]:.1f} > 100",
        elapsed,
    )
    assert nondecreasing
    assert sups[-1] > 100.0
    assert elapsed < 30.0


def _random_set(rng) -> ClosedExtSet:
    intervals = []
    points = []
    for _ in range(rng.integers(0, 3)):
        lo = float(rng.uniform(-50.0, 50.0))
        intervals.append((lo, lo + float(rng.uniform(1e-6, 30.0))))
    for _ in range(rng.integers(0, 4)):
        points.append(float(rng.uniform(-50.0, 50.0)))
    if rng.uniform() < 0.1:
        points.append(POS_INF)
    if rng.uniform() < 0.1:
        points.append(NEG_INF)
    if not intervals and not points:
        points.append(0.0)
    return ClosedExtSet.canonical(intervals, points)


def test_criterion_09_primitive_invariants():
    t0 = time.monotonic()
    rng = np.random.default_rng(0)
    idem = all(
        normalize(s) == normalize(normalize(s))
        for s in (_random_set(rng) for _ in range(1000))
    )
    metric = True
    for _ in range(1000):
        A, B, C = _random_set(rng), _random_set(rng), _random_set(rng)
        dab = hausdorff(A, B)
        metric = metric and dab == hausdorff(B, A) and dab >= 0.0
        metric = metric and hausdorff(A, A) == 0.0
        metric = metric and dab + hausdorff(B, C) - hausdorff(A, C) >= -1e-12
    eps = 2.0**-52
    worst_ulps = 0.0
    for _ in range(100):
        c = rng.uniform(-2.0, 2.0, 4)

        def fn(x, c=c):
            return c[0] * x + c[1] * x * x + c[2] * math.sin(10.0 * x) + c[3] * x**3

        g = GalleryFunction(name="mix", domain=Interval(NEG_INF, POS_INF), fn=fn)
        for _ in range(100):
            h = 10.0 ** float(rng.uniform(-12.0, -0.5))
            k = 10.0 ** float(rng.uniform(-12.0, -0.5))
            r, rq, lq = decompose(g, h, k)
            rbar = k / (h + k)
            lhs = cord_quotient(g, 0.0, h, k)
            rhs = r * rq + rbar * lq
            scale = max(abs(lhs), abs(r * rq), abs(rbar * lq), 1e-300)
            worst_ulps = max(worst_ulps, abs(lhs - rhs) / (eps * scale))
    alternate = True
    with mpmath.workprec(120):
        for alpha in (mpmath.sqrt(2), mpmath.pi, mpmath.log(2) / mpmath.log(3)):
            convs = dioph.convergents(dioph.continued_fraction(alpha, 20))
            signs = [
                mpmath.sign(mpmath.mpf(c.numerator) / c.denominator - alpha)
                for c in convs
            ]
            alternate = alternate and all(
                u != v and u != 0 for u, v in zip(signs, signs[1:])
            )
    elapsed = time.monotonic() - t0
    ok = idem and metric and worst_ulps <= 4.0 and alternate and elapsed < 5.0
    report(
        9,
        ok,
        f"normalize idempotent: {idem}, metric axioms on 1000 triples: {metric},"
        f" decomposition worst {worst_ulps:.2f} ulps <= 4 on 10000 inputs,"
        f" convergents alternate: {alternate}",
        elapsed,
    )
    assert idem
    assert metric
    assert worst_ulps <= 4.0
    assert alternate
    assert elapsed < 5.0


def test_criterion_10_reproducible_reports():
    t0 = time.monotonic()
    cmd = [sys.executable, "-m", "seqderiv.cli", "verify", "--suite", "all"]
    first = subprocess.run(cmd, capture_output=True, timeout=300)
    second = subprocess.run(cmd, capture_output=True, timeout=300)
    identical = first.stdout == second.stdout
    all_passed = first.returncode == 0 and json.loads(first.stdout)["passed"] is True
    elapsed = time.monotonic() - t0
    ok = identical and all_passed
    report(
        10,
        ok,
        f"verify --suite all twice: byte-identical {len(first.stdout)}-byte"
        f" reports, all checks passed: {all_passed}",
        elapsed,
    )
    assert identical
    assert all_passed
