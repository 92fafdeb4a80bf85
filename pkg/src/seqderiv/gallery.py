"""Reference functions for derivative-set experiments.

Closed-form examples (absolute value, smooth controls, a Weierstrass-type
series, sine-envelope functions, piecewise dense-slope constructions) and
discretely sampled two-slope functions, all behind one immutable
GalleryFunction interface with explicit domains.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import _kernels
from .errors import DomainError, ParamError
from .extreal import ClosedExtSet
from .seqgen import DecaySequence, parse_sequence_spec

WEIER_DEFAULT_A = 0.5
WEIER_DEFAULT_B = 13
WEIER_DEFAULT_TOL = 1e-12
DISCRETE_TERM_CAP = 4096  # samples cached per side of a discrete domain


@dataclass(frozen=True)
class Interval:
    """Closed interval domain; endpoints may be +-inf."""

    lo: float
    hi: float

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def contains_many(self, xs: np.ndarray) -> bool:
        return bool(np.all((xs >= self.lo) & (xs <= self.hi)))

    def describe(self) -> str:
        return f"interval[{self.lo:g}, {self.hi:g}]"


class DiscreteDomain:
    """Sample set {0} U {h_n} U {-k_n} for decay sequences h, k.

    Terms are cached up to a fixed cap (or until they underflow), with a
    hash lookup from the exact float value back to its side and index.
    """

    def __init__(self, hseq: DecaySequence, kseq: DecaySequence):
        self.hseq = hseq
        self.kseq = kseq
        self.h_offset = hseq.offset
        self.k_offset = kseq.offset
        self.h_values = _cache_terms(hseq)
        self.k_values = _cache_terms(kseq)
        self._right = {v: self.h_offset + i for i, v in enumerate(self.h_values)}
        self._left = {v: self.k_offset + i for i, v in enumerate(self.k_values)}

    def contains(self, x: float) -> bool:
        return x == 0.0 or x in self._right or -x in self._left

    def contains_many(self, xs: np.ndarray) -> bool:
        return all(self.contains(float(v)) for v in xs.flat)

    def locate(self, x: float):
        """('zero', 0) | ('right', n) | ('left', n) for x = h_n / x = -k_n."""
        if x == 0.0:
            return ("zero", 0)
        n = self._right.get(x)
        if n is not None:
            return ("right", n)
        n = self._left.get(-x)
        if n is not None:
            return ("left", n)
        raise DomainError(f"{x!r} is not a sample point of the discrete domain")

    def describe(self) -> str:
        return (
            f"discrete[h={self.hseq.spec_string()} ({len(self.h_values)} pts), "
            f"k={self.kseq.spec_string()} ({len(self.k_values)} pts)]"
        )


def _cache_terms(seq: DecaySequence, cap: int = DISCRETE_TERM_CAP) -> tuple:
    out = []
    for n in range(seq.offset, seq.offset + cap):
        try:
            out.append(seq.term(n))
        except Exception:
            break  # underflow or end of an explicit list
    return tuple(out)


Domain = Union[Interval, DiscreteDomain]


@dataclass(frozen=True)
class GalleryFunction:
    """A named function with an explicit domain.

    ``eval`` checks the domain and raises a domain error outside it;
    ``eval_many`` is the vectorized form (a fast path when the family
    provides one).  Instances are immutable and thread-safe.
    """

    name: str
    domain: Domain
    fn: Callable[[float], float]
    params: tuple = ()
    is_continuous: bool = True
    vector_fn: Optional[Callable] = None

    def eval(self, x: float) -> float:
        x = float(x)
        if not self.domain.contains(x):
            raise DomainError(
                f"{self.name}: {x!r} outside domain {self.domain.describe()}"
            )
        return self.fn(x)

    def eval_many(self, xs) -> np.ndarray:
        arr = np.asarray(xs, dtype=np.float64)
        if not self.domain.contains_many(arr):
            raise DomainError(
                f"{self.name}: some points outside domain {self.domain.describe()}"
            )
        if self.vector_fn is not None:
            return self.vector_fn(arr)
        out = np.empty(arr.shape, dtype=np.float64)
        flat = arr.ravel()
        oflat = out.ravel()
        for i in range(flat.size):
            oflat[i] = self.fn(float(flat[i]))
        return out

    def params_dict(self) -> dict:
        return dict(self.params)

    def describe(self) -> str:
        if not self.params:
            return self.name
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}:{inner}"


def weierstrass(a: float, b: int, x: float, tol: float) -> float:
    """Partial sum of sum a^n cos(b^n pi x), truncated when the remaining
    tail is at most tol.  The classical non-differentiability condition
    a*b > 1 + 3*pi/2 is reported as a warning but not enforced."""
    _check_weier_params(a, b, warn=True)
    if not tol > 0:
        raise ParamError(f"tol must be positive, got {tol}")
    n_terms = _kernels.series_tail_terms(a, tol)
    return float(_kernels.weier_many(np.array([x]), a, b, n_terms)[0])


def _check_weier_params(a: float, b: int, warn: bool) -> bool:
    if not 0.0 < a < 1.0:
        raise ParamError(f"weierstrass coefficient a must be in (0,1), got {a}")
    if b != int(b) or int(b) % 2 == 0 or b < 1:
        raise ParamError(f"weierstrass frequency b must be a positive odd integer, got {b}")
    ok = a * b > 1.0 + 1.5 * math.pi
    if warn and not ok:
        warnings.warn(
            f"a*b = {a * b:g} <= 1 + 3*pi/2 ~= {1 + 1.5 * math.pi:.4f}: "
            "nowhere-differentiability is not guaranteed for these parameters",
            UserWarning,
            stacklevel=3,
        )
    return ok


def make_weierstrass(
    a: float = WEIER_DEFAULT_A,
    b: int = WEIER_DEFAULT_B,
    tol: float = WEIER_DEFAULT_TOL,
) -> GalleryFunction:
    ok = _check_weier_params(a, int(b), warn=True)
    if not tol > 0:
        raise ParamError(f"tol must be positive, got {tol}")
    b = int(b)
    n_terms = _kernels.series_tail_terms(a, tol)

    def vec(xs: np.ndarray) -> np.ndarray:
        return _kernels.weier_many(xs, a, b, n_terms)

    return GalleryFunction(
        name="weierstrass",
        domain=Interval(-math.inf, math.inf),
        fn=lambda x: float(_kernels.weier_many(np.array([x]), a, b, n_terms)[0]),
        params=(("a", a), ("b", b), ("tol", tol), ("growth_condition", ok)),
        is_continuous=True,
        vector_fn=vec,
    )


def sine_envelope(a: float, b: float, x: float) -> float:
    """Oscillating envelope function on [0,1] with f(0) = 0.

    For |a| <= |b|: b*x*sin(1/x) where b*sin(1/x) >= a, else a*x.
    For |b| < |a|: a*x*sin(1/x) where b*sin(1/x) >= a, else b*x.
    """
    if not a < b:
        raise ParamError(f"sine_envelope needs a < b, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"sine_envelope defined on [0,1], got {x!r}")
    if x == 0.0:
        return 0.0
    s = math.sin(1.0 / x)
    if abs(a) <= abs(b):
        return b * x * s if b * s >= a else a * x
    return a * x * s if b * s >= a else b * x


def make_sine_envelope(a: float, b: float) -> GalleryFunction:
    if not a < b:
        raise ParamError(f"sine_envelope needs a < b, got a={a}, b={b}")

    def vec(xs: np.ndarray) -> np.ndarray:
        out = np.empty(xs.shape, dtype=np.float64)
        nz = xs != 0.0
        xi = xs[nz]
        s = np.sin(1.0 / xi)
        if abs(a) <= abs(b):
            vals = np.where(b * s >= a, b * xi * s, a * xi)
        else:
            vals = np.where(b * s >= a, a * xi * s, b * xi)
        out[nz] = vals
        out[~nz] = 0.0
        return out

    return GalleryFunction(
        name="sine_envelope",
        domain=Interval(0.0, 1.0),
        fn=lambda x: sine_envelope(a, b, x),
        params=(("a", a), ("b", b)),
        is_continuous=True,
        vector_fn=vec,
    )


def make_dense_slope(
    S: ClosedExtSet,
    dense_seq,
    xi: str = "harmonic",
) -> GalleryFunction:
    """Piecewise-linear-by-cell function on [0,1] realizing a prescribed
    slope sequence.

    Blocks are (1/(n+1), 1/n], each split into n+1 equal cells; cell k of
    block n carries f(x) = a_k * x for k <= n, the last cell carries
    f(x) = sqrt(x), and f(0) = 0.  ``dense_seq`` is the slope sequence
    a_1, a_2, ...: a callable (1-based index), or a finite list which is
    cycled (a finite list cannot literally be dense, so the cycle keeps
    every listed slope recurring in all later blocks).  Density of the
    slopes in S is the caller's responsibility and is not verified.
    """
    if xi != "harmonic":
        raise ParamError(f"unknown partition policy {xi!r} (only 'harmonic')")
    if S is None or S.is_empty():
        raise ParamError("slope target set S must be a non-empty closed set")
    if callable(dense_seq):
        slope_at = dense_seq
        label = "callable"
    else:
        slopes = tuple(float(v) for v in dense_seq)
        if not slopes:
            raise ParamError("dense_seq must be non-empty")
        slope_at = lambda k: slopes[(k - 1) % len(slopes)]
        label = ";".join(f"{v:g}" for v in slopes)

    def f(x: float) -> float:
        if x == 0.0:
            return 0.0
        n = max(1, int(1.0 / x))
        while x <= 1.0 / (n + 1):
            n += 1
        while x > 1.0 / n:
            n -= 1
        lo = 1.0 / (n + 1)
        width = 1.0 / n - lo
        k = int(math.ceil((x - lo) / width * (n + 1)))
        k = min(max(k, 1), n + 1)
        if k <= n:
            return slope_at(k) * x
        return math.sqrt(x)

    return GalleryFunction(
        name="dense_slope",
        domain=Interval(0.0, 1.0),
        fn=f,
        params=(("slopes", label), ("xi", xi), ("S", str(S))),
        is_continuous=False,
    )


def make_two_slope(
    R: float, L: float, hseq: DecaySequence, kseq: DecaySequence
) -> GalleryFunction:
    """Discrete-domain function with f(h_n) = R*h_n and f(-k_n) = -L*k_n.

    One-sided Newton quotients along the sample sequences are R and L by
    construction (exactly, when the terms are binary powers; to float
    rounding otherwise)."""
    dom = DiscreteDomain(hseq, kseq)

    def f(x: float) -> float:
        side, _ = dom.locate(x)
        if side == "zero":
            return 0.0
        if side == "right":
            return R * x
        return L * x  # x = -k_n, so f = -L*k_n

    return GalleryFunction(
        name="two_slope",
        domain=dom,
        fn=f,
        params=(
            ("R", R),
            ("L", L),
            ("h", hseq.spec_string()),
            ("k", kseq.spec_string()),
        ),
        is_continuous=False,
    )


def make_abs() -> GalleryFunction:
    return GalleryFunction(
        name="abs",
        domain=Interval(-math.inf, math.inf),
        fn=abs,
        vector_fn=np.abs,
    )


def make_square() -> GalleryFunction:
    return GalleryFunction(
        name="square",
        domain=Interval(-math.inf, math.inf),
        fn=lambda x: x * x,
        vector_fn=np.square,
    )


def make_sin() -> GalleryFunction:
    return GalleryFunction(
        name="sin",
        domain=Interval(-math.inf, math.inf),
        fn=math.sin,
        vector_fn=np.sin,
    )


def _sqrt_sin_scalar(x: float) -> float:
    if x == 0.0:
        return 0.0
    return math.sqrt(x) * math.sin(1.0 / x)


def make_sqrt_sin() -> GalleryFunction:
    """sqrt(x) * sin(1/x) on [0,1], 0 at 0; continuous, both one-sided
    derivative sets at 0 fill the whole extended line."""
    def vec(xs: np.ndarray) -> np.ndarray:
        out = np.zeros(xs.shape, dtype=np.float64)
        nz = xs != 0.0
        xi = xs[nz]
        out[nz] = np.sqrt(xi) * np.sin(1.0 / xi)
        return out

    return GalleryFunction(
        name="sqrt_sin",
        domain=Interval(0.0, 1.0),
        fn=_sqrt_sin_scalar,
        vector_fn=vec,
    )


def make_sqrt_sin_even() -> GalleryFunction:
    """Even extension sqrt(|x|) * sin(1/|x|) on [-1,1]; the two-sided
    variant used when a symmetric neighborhood of 0 is needed."""
    def vec(xs: np.ndarray) -> np.ndarray:
        out = np.zeros(xs.shape, dtype=np.float64)
        nz = xs != 0.0
        xi = np.abs(xs[nz])
        out[nz] = np.sqrt(xi) * np.sin(1.0 / xi)
        return out

    return GalleryFunction(
        name="sqrt_sin_even",
        domain=Interval(-1.0, 1.0),
        fn=lambda x: _sqrt_sin_scalar(abs(x)),
        vector_fn=vec,
    )


def make_glued(a: float, b: float, c: float, d: float) -> GalleryFunction:
    """Two sine-envelope branches glued at 0: the (a,b) branch for x >= 0
    and the reflected (-d,-c) branch for x < 0, on [-1,1]."""
    if not a < b:
        raise ParamError(f"glued needs a < b, got a={a}, b={b}")
    if not c < d:
        raise ParamError(f"glued needs c < d, got c={c}, d={d}")

    def f(x: float) -> float:
        if x >= 0.0:
            return sine_envelope(a, b, x)
        return sine_envelope(-d, -c, -x)

    return GalleryFunction(
        name="glued",
        domain=Interval(-1.0, 1.0),
        fn=f,
        params=(("a", a), ("b", b), ("c", c), ("d", d)),
        is_continuous=True,
    )


# registry: name -> (factory taking a param dict, short description)
_REGISTRY = {
    "weierstrass": (
        lambda p: make_weierstrass(
            a=float(p.pop("a", WEIER_DEFAULT_A)),
            b=int(float(p.pop("b", WEIER_DEFAULT_B))),
            tol=float(p.pop("tol", WEIER_DEFAULT_TOL)),
        ),
        "cosine series sum a^n cos(b^n pi x); continuous, nowhere differentiable",
    ),
    "sine_envelope": (
        lambda p: make_sine_envelope(float(p.pop("a")), float(p.pop("b"))),
        "oscillates between the lines a*x and b*x on [0,1]",
    ),
    "two_slope": (
        lambda p: make_two_slope(
            float(p.pop("R")),
            float(p.pop("L")),
            parse_sequence_spec(p.pop("h")),
            parse_sequence_spec(p.pop("k")),
        ),
        "discrete domain {0, h_n, -k_n} with one-sided slopes R and L",
    ),
    "dense_slope": (
        lambda p: _dense_slope_from_params(p),
        "piecewise slopes cycling a listed sequence, sqrt(x) on final cells",
    ),
    "abs": (lambda p: make_abs(), "absolute value"),
    "square": (lambda p: make_square(), "x^2, smooth control"),
    "sin": (lambda p: make_sin(), "sine, smooth control"),
    "sqrt_sin": (lambda p: make_sqrt_sin(), "sqrt(x) sin(1/x) on [0,1]"),
    "sqrt_sin_even": (
        lambda p: make_sqrt_sin_even(),
        "even extension of sqrt_sin on [-1,1]",
    ),
    "glued": (
        lambda p: make_glued(
            float(p.pop("a")), float(p.pop("b")), float(p.pop("c")), float(p.pop("d"))
        ),
        "sine_envelope(a,b) for x >= 0 glued to the reflected (-d,-c) branch",
    ),
}


def _dense_slope_from_params(p: dict) -> GalleryFunction:
    raw = p.pop("slopes", None)
    if raw is None:
        raise ParamError("dense_slope needs slopes=v1;v2;...")
    slopes = [float(v) for v in str(raw).split(";") if v != ""]
    S = ClosedExtSet.from_values(slopes)
    return make_dense_slope(S, slopes)


def registry_names() -> list:
    return sorted(_REGISTRY)


def registry_description(name: str) -> str:
    return _REGISTRY[name][1]


def build(spec: str) -> GalleryFunction:
    """Build a gallery function from a compact spec string.

    ``name`` or ``name:key=value,key=value,...``; values may themselves be
    sequence specs like ``exp:2`` (commas only separate ``key=`` pairs).
    Examples: ``abs``, ``weierstrass:a=0.5,b=13``,
    ``two_slope:R=1,L=0,h=exp:2,k=exp:4``.
    """
    name, _, rest = spec.partition(":")
    name = name.strip()
    if name not in _REGISTRY:
        raise ParamError(
            f"unknown gallery function {name!r}; known: {', '.join(registry_names())}"
        )
    params: dict = {}
    if rest:
        # split on commas, but glue back segments that lack '=': they are
        # continuations of the previous value (e.g. h=list:0.5,0.25)
        key = None
        for part in rest.split(","):
            if "=" in part:
                key, _, val = part.partition("=")
                params[key.strip()] = val.strip()
            elif key is not None:
                params[key] = params[key] + "," + part.strip()
            else:
                raise ParamError(f"bad parameter segment {part!r} in {spec!r}")
    try:
        fn = _REGISTRY[name][0](params)
    except KeyError as exc:
        raise ParamError(f"missing parameter {exc} for gallery function {name!r}") from exc
    if params:
        raise ParamError(
            f"unused parameters for {name!r}: {', '.join(sorted(params))}"
        )
    return fn


def continuous_two_sided_at_zero() -> list:
    """The continuous gallery functions whose domain covers both sides of
    0: the family used by whole-gallery derivative-set comparisons."""
    return [
        make_abs(),
        make_square(),
        make_sin(),
        make_weierstrass(),
        make_sqrt_sin_even(),
        make_glued(-1.0, 2.0, -3.0, 1.0),
    ]
