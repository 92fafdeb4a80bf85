"""Command-line front end.

Subcommands cover gallery listing and evaluation, quotient traces,
limit-set estimation, analytic prediction, target solving, and the
verification suite.  Reports are JSON (default) or CSV on standard
output; every report embeds the effective configuration, uses the
"seqderiv/1" schema tag, and is byte-identical across runs with the
same configuration.  Exit codes: 0 success, 1 runtime or verification
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict, dataclass
from typing import List, Optional

from . import dioph
from .errors import ParamError, SeqDerivError, UsageError
from .extreal import ext_to_token
from .gallery import build, registry_description, registry_names
from .limitset import (
    SamplingBudget,
    estimate_cord_set,
    estimate_secant_set,
    predict_exp,
    predict_poly,
    subsequential_limits,
    target_cord,
)
from .quotient import DEFAULT_INFINITY_THRESHOLD, cord_quotient, trace
from .seqgen import parse_sequence_spec
from .verify import run_suite

SCHEMA = "seqderiv/1"


@dataclass(frozen=True)
class RunConfig:
    """Effective configuration of one invocation, embedded in the
    report for audit; identical configs produce identical bytes."""

    command: str
    format: str = "json"
    fn: Optional[str] = None
    x: Optional[float] = None
    h_seq: Optional[str] = None
    k_seq: Optional[str] = None
    n: Optional[int] = None
    side: Optional[str] = None
    budget: Optional[int] = None
    seed: Optional[int] = None
    cluster_tol: Optional[float] = None
    target: Optional[float] = None
    tol: Optional[float] = None
    bracket: Optional[str] = None
    suite: Optional[str] = None
    a: Optional[float] = None
    b: Optional[float] = None
    m: Optional[float] = None
    R: Optional[float] = None
    L: Optional[float] = None
    t_min: Optional[int] = None
    t_max: Optional[int] = None
    i_max: Optional[int] = None
    j_max: Optional[int] = None
    infinity_threshold: Optional[float] = None
    precision_bits: Optional[int] = None

    def to_json_obj(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}



def _config_from_args(args) -> RunConfig:
    fields = {
        name: getattr(args, name, None)
        for name in RunConfig.__dataclass_fields__
        if name not in ("command", "format", "precision_bits")
    }
    if args.command in ("predict-exp", "verify"):
        fields["precision_bits"] = dioph.precision_bits()
    return RunConfig(
        command=args.command, format=getattr(args, "format", "json"), **fields
    )

def _report(config: RunConfig, payload: dict) -> dict:
    out = {"schema": SCHEMA, "config": config.to_json_obj()}
    out.update(payload)
    return out


def _emit_json(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2, allow_nan=False))
    sys.stdout.write("\n")


def _emit_csv(header: List[str], rows: List[list]) -> None:
    # LF endings, '.' decimal separator (repr of Python floats)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else repr(v) for v in row])


def _budget_from(args) -> SamplingBudget:
    return SamplingBudget(
        samples=args.budget,
        seed=args.seed,
        cluster_tol=args.cluster_tol,
        infinity_threshold=args.infinity_threshold,
    )


def _cmd_gallery(args) -> int:
    config = _config_from_args(args)
    rows = [
        {"name": name, "description": registry_description(name)}
        for name in registry_names()
    ]
    if args.format == "csv":
        _emit_csv(["name", "description"], [[r["name"], r["description"]] for r in rows])
    else:
        _emit_json(_report(config, {"functions": rows}))
    return 0


def _cmd_eval(args) -> int:
    config = _config_from_args(args)
    f = build(args.fn)
    value = f.eval(args.x)
    if args.format == "csv":
        _emit_csv(["x", "value"], [[args.x, value]])
    else:
        _emit_json(
            _report(
                config,
                {"function": f.describe(), "value": ext_to_token(value)},
            )
        )
    return 0


def _cmd_trace(args) -> int:
    config = _config_from_args(args)
    f = build(args.fn)
    hseq = parse_sequence_spec(args.h_seq)
    kseq = parse_sequence_spec(args.k_seq) if args.k_seq else None
    t = trace(f, args.x, hseq, kseq, N=args.n, infinity_threshold=args.infinity_threshold)
    if args.format == "csv":
        sys.stdout.write(t.to_csv())
        return 0
    payload = {"trace": t.to_json_obj()}
    if args.n >= 100:
        limits = subsequential_limits(t, cluster_tol=args.cluster_tol)
        payload["subsequential_limits"] = limits.to_json_obj()
    _emit_json(_report(config, payload))
    return 0


def _estimate_rows(est) -> List[list]:
    reps = est.evidence.cluster_reps
    if not reps:
        # analytic results carry their centers in the set itself, or in
        # the witness list for the interval case
        if est.set.points:
            reps = est.set.points
        else:
            reps = tuple(
                w["induced_r"] for w in est.evidence.witnesses if "induced_r" in w
            )
    return [[i, float(r)] for i, r in enumerate(reps)]


def _cmd_secant_set(args) -> int:
    config = _config_from_args(args)
    f = build(args.fn)
    est = estimate_secant_set(f, args.x, side=args.side, budget=_budget_from(args))
    if args.format == "csv":
        _emit_csv(["cluster", "center"], _estimate_rows(est))
    else:
        _emit_json(_report(config, {"estimate": est.to_json_obj()}))
    return 0


def _cmd_cord_set(args) -> int:
    config = _config_from_args(args)
    f = build(args.fn)
    est = estimate_cord_set(f, args.x, budget=_budget_from(args))
    if args.format == "csv":
        _emit_csv(["cluster", "center"], _estimate_rows(est))
    else:
        _emit_json(_report(config, {"estimate": est.to_json_obj()}))
    return 0


def _cmd_predict_poly(args) -> int:
    config = _config_from_args(args)
    pred = predict_poly(
        args.a, args.b, args.m, args.R, args.L, i_max=args.i_max, j_max=args.j_max
    )
    if args.format == "csv":
        rows = [[i, j, w] for (i, j), w in zip(pred.pairs, pred.weights)]
        _emit_csv(["i", "j", "weight"], rows)
    else:
        _emit_json(_report(config, {"prediction": pred.to_json_obj()}))
    return 0


def _cmd_predict_exp(args) -> int:
    config = _config_from_args(args)
    est = predict_exp(args.a, args.b, args.R, args.L, t_range=(args.t_min, args.t_max))
    if args.format == "csv":
        _emit_csv(["cluster", "center"], _estimate_rows(est))
    else:
        _emit_json(_report(config, {"prediction": est.to_json_obj()}))
    return 0


def _cmd_solve_target(args) -> int:
    config = _config_from_args(args)
    f = build(args.fn)
    parts = [float(v) for v in args.bracket.split(",")]
    if len(parts) != 4:
        raise UsageError("--bracket needs four comma-separated values: h0,k0,h1,k1")
    endpoints = ((parts[0], parts[1]), (parts[2], parts[3]))
    h, k = target_cord(
        f,
        args.x,
        args.target,
        args.tol,
        endpoints,
        infinity_threshold=args.infinity_threshold,
    )
    q = cord_quotient(f, args.x, h, k, args.infinity_threshold)
    if args.format == "csv":
        _emit_csv(["h", "k", "quotient"], [[h, k, q]])
    else:
        _emit_json(
            _report(
                config,
                {"h": h, "k": k, "quotient": ext_to_token(q)},
            )
        )
    return 0


def _cmd_verify(args) -> int:
    config = _config_from_args(args)
    results = run_suite(
        suite=args.suite, seed=args.seed, samples=args.budget, a=args.a, b=args.b
    )
    all_passed = all(r.passed for r in results)
    if args.format == "csv":
        rows = [[r.check_id, r.slug, str(r.passed).lower()] for r in results]
        _emit_csv(["id", "slug", "passed"], rows)
    else:
        _emit_json(
            _report(
                config,
                {
                    "checks": [r.to_json_obj() for r in results],
                    "passed": all_passed,
                },
            )
        )
    return 0 if all_passed else 1


def _add_common(p, fn=True, x=True):
    if fn:
        p.add_argument("--fn", required=True, help="function spec, e.g. weierstrass:a=0.5,b=13")
    if x:
        p.add_argument("--x", type=float, default=0.0, help="anchor point (default 0)")
    p.add_argument(
        "--format", choices=("json", "csv"), default="json", help="report format"
    )
    p.add_argument(
        "--infinity-threshold",
        type=float,
        default=DEFAULT_INFINITY_THRESHOLD,
        help="quotient magnitudes beyond this map to +/-inf",
    )


def _add_budget(p):
    p.add_argument("--budget", type=int, default=100_000, help="sample budget")
    p.add_argument("--seed", type=int, default=0, help="random seed")
    p.add_argument(
        "--cluster-tol", type=float, default=1e-3, help="chart-metric cluster tolerance"
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="seqderiv",
        description="Sequential secant and cord derivative sets: evaluation, "
        "estimation, prediction, verification.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gallery", help="list available function families")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(run=_cmd_gallery)

    p = sub.add_parser("eval", help="evaluate a gallery function at a point")
    _add_common(p)
    p.set_defaults(run=_cmd_eval)

    p = sub.add_parser("trace", help="difference-quotient trace along sequences")
    _add_common(p)
    p.add_argument("--h-seq", required=True, help="step sequence spec, e.g. harmonic:0,1")
    p.add_argument("--k-seq", default=None, help="left step sequence (cord quotients)")
    p.add_argument("--n", type=int, default=200, help="number of entries")
    p.add_argument("--cluster-tol", type=float, default=1e-3)
    p.set_defaults(run=_cmd_trace)

    p = sub.add_parser("secant-set", help="estimate the secant derivative set")
    _add_common(p)
    p.add_argument("--side", choices=("left", "right", "both"), default="both")
    _add_budget(p)
    p.set_defaults(run=_cmd_secant_set)

    p = sub.add_parser("cord-set", help="estimate the cord derivative set")
    _add_common(p)
    _add_budget(p)
    p.set_defaults(run=_cmd_cord_set)

    p = sub.add_parser(
        "predict-poly", help="analytic cord limits for polynomial decay rates"
    )
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--a", type=float, required=True, help="right rate constant")
    p.add_argument("--b", type=float, required=True, help="left rate constant")
    p.add_argument("--m", type=float, required=True, help="common decay exponent")
    p.add_argument("--R", type=float, default=1.0, help="right slope")
    p.add_argument("--L", type=float, default=0.0, help="left slope")
    p.add_argument("--i-max", type=int, default=40)
    p.add_argument("--j-max", type=int, default=40)
    p.set_defaults(run=_cmd_predict_poly)

    p = sub.add_parser(
        "predict-exp", help="analytic cord limit structure for exponential rates"
    )
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--a", type=float, required=True, help="right decay base (> 1)")
    p.add_argument("--b", type=float, required=True, help="left decay base (> 1)")
    p.add_argument("--R", type=float, default=1.0, help="right slope")
    p.add_argument("--L", type=float, default=0.0, help="left slope")
    p.add_argument("--t-min", type=int, default=-24)
    p.add_argument("--t-max", type=int, default=24)
    p.set_defaults(run=_cmd_predict_exp)

    p = sub.add_parser(
        "solve-target", help="find (h, k) whose cord quotient hits a target"
    )
    _add_common(p)
    p.add_argument("--target", type=float, required=True, help="target quotient value")
    p.add_argument("--tol", type=float, default=1e-9, help="absolute tolerance")
    p.add_argument(
        "--bracket",
        default="1e-2,1e-13,1e-13,1e-2",
        help="bracket endpoints h0,k0,h1,k1",
    )
    p.set_defaults(run=_cmd_solve_target)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--suite", default="all", help="all, a check slug, or a check number")
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--a", type=float, default=None, help="override base a for rate checks")
    p.add_argument("--b", type=float, default=None, help="override base b for rate checks")
    p.set_defaults(run=_cmd_verify)

    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.run(args)
    except BrokenPipeError:
        # reader closed the pipe (e.g. head); suppress the traceback
        import os

        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return 1
    except (UsageError, ParamError) as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except SeqDerivError as exc:
        _emit_json(
            {
                "schema": SCHEMA,
                "config": _config_from_args(args).to_json_obj(),
                "error": {"type": type(exc).__name__, "message": str(exc)},
            }
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
