"""Command line entry point.

Subcommands:
  check-model  <file|builtin>  run an IP or Stanilov verdict on a model
  check-metric <file|builtin>  run the verdict at sampled points of a metric
  reproduce    <name>          run one scripted reproduction bundle

Builtins: "v3s:<s>" (canonical three-block model), "g3s:<s>" (three-block
metric), "gf:<poly in x1..xp>" (graph metric), "gF:<f1;...;fs>" (generalized
three-block metric, f_i univariate in u_i).  Exit codes: 0 every asserted
property holds, 1 a property failed (witnesses in the report), 2 input error.
"""

from __future__ import annotations

import argparse
import inspect
import re
import sys

from .grassmann import KTooLargeError
from .io import FormatError, load_metric, load_model, parse_poly
from .metrics import DegenerateAtPointError, metric_g_3s, metric_g_F, metric_g_f
from .modelspace import model_V3s, validate_model
from .report import metric_report_to_dict, render_text, to_json, verdict_to_dict
from .reproduce import REPRODUCTIONS
from .verify import (
    check_ip,
    check_metric,
    check_stanilov,
    v3s_ip_witness_frames,
    v3s_stanilov_witness_frames,
)

__all__ = ["main"]


class InputError(ValueError):
    pass


def _parse_int_suffix(text: str, prefix: str) -> int:
    raw = text[len(prefix):]
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"bad builtin parameter {raw!r} in {text!r}") from None
    return value


def _builtin_model(target: str):
    """Resolve a model builtin; returns (model, v3s_s or None)."""
    if target.startswith("v3s:"):
        s = _parse_int_suffix(target, "v3s:")
        return model_V3s(s), s
    return None, None


def _builtin_metric(target: str):
    if target.startswith("g3s:"):
        return metric_g_3s(_parse_int_suffix(target, "g3s:"))
    if target.startswith("gf:"):
        text = target[3:]
        indices = [int(m) for m in re.findall(r"\bx(\d+)\b", text)]
        if not indices:
            raise InputError("gf: potential must use variables x1, x2, ...")
        p_dim = max(2, max(indices))
        xs = tuple(f"x{i + 1}" for i in range(p_dim))
        return metric_g_f(p_dim, parse_poly(text, xs))
    if target.startswith("gF:"):
        parts = [p.strip() for p in target[3:].split(";")]
        if len(parts) < 2:
            raise InputError("gF: needs at least two ';'-separated potentials")
        fs = [
            parse_poly(part, (f"u{i + 1}",)) for i, part in enumerate(parts)
        ]
        return metric_g_F(len(parts), fs)
    return None


def _load_model_target(target: str):
    model, s = _builtin_model(target)
    if model is not None:
        return model, s
    return load_model(target), None


def _load_metric_target(target: str):
    g = _builtin_metric(target)
    if g is not None:
        return g
    return load_metric(target)


def _v3s_witnesses(s: int | None, kind: str, k: int, causal: str) -> tuple:
    """Named witness planes for the three-block builtin, so the battery
    always reproduces the known counterexamples."""
    if s is None or causal != "timelike":
        return ()
    if kind == "ip":
        return tuple(v3s_ip_witness_frames(s))
    if 2 <= k < 2 * s:
        return v3s_stanilov_witness_frames(s, k)
    return ()


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        print(to_json(doc))
    else:
        print(render_text(doc))


def _add_verdict_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--kind", choices=("ip", "stanilov"), default="ip")
    sub.add_argument("--k", type=int, default=2)
    sub.add_argument("--causal", choices=("spacelike", "timelike"), default="spacelike")
    sub.add_argument("--samples", type=int, default=50)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--workers", type=int, default=1)
    sub.add_argument("--format", choices=("json", "text"), default="json")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvlab",
        description="Exact curvature operator checks on models and polynomial metrics.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_model = subs.add_parser("check-model", help="verdict on a model file or builtin")
    p_model.add_argument("target")
    _add_verdict_flags(p_model)

    p_metric = subs.add_parser(
        "check-metric", help="verdict at sampled points of a metric file or builtin"
    )
    p_metric.add_argument("target")
    p_metric.add_argument("--points", type=int, default=3)
    _add_verdict_flags(p_metric)

    p_rep = subs.add_parser("reproduce", help="run one scripted reproduction bundle")
    p_rep.add_argument("target", choices=sorted(REPRODUCTIONS))
    p_rep.add_argument("--s", type=int, default=2)
    p_rep.add_argument("--points", type=int, default=None)
    p_rep.add_argument("--samples", type=int, default=None)
    p_rep.add_argument("--seed", type=int, default=0)
    p_rep.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def _run_check_model(args) -> int:
    model, s = _load_model_target(args.target)
    violation = validate_model(model)
    if violation is not None:
        raise InputError(f"model fails {violation.kind} at {violation.indices}")
    extra = _v3s_witnesses(s, args.kind, args.k, args.causal)
    if args.kind == "ip":
        verdict = check_ip(
            model, args.causal, args.samples, args.seed,
            extra_frames=extra, workers=args.workers,
        )
    else:
        verdict = check_stanilov(
            model, args.k, args.causal, args.samples, args.seed,
            extra_frames=extra, workers=args.workers,
        )
    _emit(verdict_to_dict(verdict), args.format)
    return 0 if verdict.holds else 1


def _run_check_metric(args) -> int:
    g = _load_metric_target(args.target)
    report = check_metric(
        g,
        args.kind,
        args.causal,
        k=args.k,
        points=args.points,
        planes_per_point=args.samples,
        seed=args.seed,
        workers=args.workers,
    )
    _emit(metric_report_to_dict(report), args.format)
    return 0 if report.all_hold else 1


def _run_reproduce(args) -> int:
    fn = REPRODUCTIONS[args.target]
    accepted = inspect.signature(fn).parameters
    kwargs = {"seed": args.seed}
    if "s" in accepted:
        kwargs["s"] = args.s
    if "points" in accepted and args.points is not None:
        kwargs["points"] = args.points
    if "samples" in accepted and args.samples is not None:
        kwargs["samples"] = args.samples
    report = fn(**kwargs)
    _emit(report, args.format)
    return 0 if report["ok"] else 1


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "check-model":
            return _run_check_model(args)
        if args.command == "check-metric":
            return _run_check_metric(args)
        return _run_reproduce(args)
    except (
        InputError,
        FormatError,
        DegenerateAtPointError,
        KTooLargeError,
        OSError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
