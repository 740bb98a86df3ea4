"""Command-line interface: single-point reports, parameter sweeps, random-weight
scatter data and the invariant selftest.

Subcommands
-----------
models    list model ids, parameter names, domains and classification hints
bounds    JSON report (R, C_S, C_R, C_Z, C_H, delta_C, ...) at one point
sweep     CSV/JSON rows along one parameter or control axis
randw     gap values for random positive weights at one point
selftest  run the invariant suites; exit 0 iff everything passes

Exit codes: 0 success, 1 selftest failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from . import bounds as bd
from . import infogeo as ig
from . import models as md
from .selftest import run_selftest

CSV_HEADER = "axis,R,C_S,C_R,C_Z,C_H,delta_C,w_opt,branch,class"
ROW_ERRORS = (
    md.DomainError,
    ig.PureLimitError,
    ig.RldUndefinedError,
    ig.SingularModelError,
    bd.UnsupportedModelError,
)

PARAM_FLAGS = {
    "omega": ("--omega", 1.0),
    "gamma": ("--gamma", 1.0),
    "r": ("--r", 0.5),
    "theta": ("--theta", math.pi / 2),
    "phi": ("--phi", 0.0),
    "t": ("--t", 1.0),
    "gamma_ad": ("--gamma-ad", 1.0),
    "gamma_deph": ("--gamma-deph", 1.0),
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class WeightSpec:
    mode: str  # fixed | identity | bures | opt | random
    diag: tuple[float, ...] | None = None
    count: int = 0


def parse_weight(text: str) -> WeightSpec:
    if text == "identity":
        return WeightSpec("identity")
    if text == "bures":
        return WeightSpec("bures")
    if text == "opt":
        return WeightSpec("opt")
    if text.startswith("diag:"):
        try:
            values = tuple(float(x) for x in text[5:].split(","))
        except ValueError:
            raise UsageError(f"bad diagonal weight {text!r}") from None
        if len(values) not in (2, 3) or any(v <= 0 for v in values):
            raise UsageError("diagonal weight needs 2 or 3 positive entries")
        return WeightSpec("fixed", diag=values)
    if text.startswith("random:"):
        try:
            count = int(text[7:])
        except ValueError:
            raise UsageError(f"bad random weight count in {text!r}") from None
        if count < 1:
            raise UsageError("random weight count must be >= 1")
        return WeightSpec("random", count=count)
    raise UsageError(f"unknown weight spec {text!r}; use diag:a,b[,c] | bures | identity | opt | random:N")


def fixed_weight_for(info: ig.InfoMatrices, spec: WeightSpec) -> np.ndarray:
    if spec.mode == "identity":
        return bd.identity_weight(info.n)
    if spec.mode == "bures":
        return bd.bures_weight(info)
    if spec.mode == "fixed":
        if len(spec.diag) != info.n:
            raise UsageError(f"weight has {len(spec.diag)} entries but the model has {info.n} parameters")
        return bd.diag_weight(spec.diag)
    raise UsageError(f"weight mode {spec.mode} is not a fixed weight")


def point_row(model: md.Model, lam, ctrl, spec: WeightSpec, row_seed) -> dict:
    """Evaluate one model point under the requested weight mode."""
    info = ig.model_information(model, lam, ctrl)
    cls = bd.classification_for_model(model, info)
    w_opt = None
    if spec.mode == "opt":
        opt = bd.optimize_delta_c_diag(info, cls)
        w_opt = opt.w_opt
        if info.n == 2:
            w = bd.diag_weight((1.0, opt.w_opt))
        else:
            w = bd.diag_weight((1.0,) + tuple(opt.w_opt))
    elif spec.mode == "random":
        samples = bd.random_weight_sweep(info, cls, spec.count, seed=row_seed)
        w = max(samples, key=lambda pair: pair[1])[0]
    else:
        w = fixed_weight_for(info, spec)
    rep = bd.bounds_report(w, info, cls)
    return {
        "R": rep.r,
        "C_S": rep.c_s,
        "C_R": rep.c_r,
        "C_Z": rep.c_z,
        "C_H": rep.c_h,
        "delta_C": rep.delta_c,
        "w_opt": w_opt,
        "branch": rep.branch.value,
        "class": rep.classification.value,
    }


def nan_row() -> dict:
    return {
        "R": math.nan,
        "C_S": math.nan,
        "C_R": math.nan,
        "C_Z": math.nan,
        "C_H": math.nan,
        "delta_C": math.nan,
        "w_opt": None,
        "branch": "",
        "class": "out-of-domain",
    }


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return ";".join(f"{v:.12g}" for v in x)
    return f"{x:.12g}"


def row_to_csv(axis_value, row: dict) -> str:
    cells = [_fmt(axis_value)] + [
        _fmt(row[key]) for key in ("R", "C_S", "C_R", "C_Z", "C_H", "delta_C", "w_opt", "branch", "class")
    ]
    return ",".join(cells)


def row_to_json(axis_value, row: dict) -> dict:
    def clean(v):
        if isinstance(v, float) and math.isnan(v):
            return None
        if isinstance(v, tuple):
            return list(v)
        return v

    out = {"axis": axis_value}
    out.update({k: clean(v) for k, v in row.items()})
    return out


def gather_values(args, model: md.Model) -> tuple[list[float], md.ModelControls]:
    vals = {name: getattr(args, name) for name in PARAM_FLAGS}
    lam = [vals[p] for p in model.param_names]
    ctrl = md.ModelControls(theta=vals["theta"], phi=vals["phi"], t=vals["t"])
    return lam, ctrl


def apply_axis(model: md.Model, axis: str, value: float, lam: list[float], ctrl: md.ModelControls):
    if axis == "gamma_t":
        if "gamma" not in model.param_names:
            raise UsageError(f"axis gamma_t needs a model with a gamma parameter, not {model.name}")
        lam = list(lam)
        lam[model.param_names.index("gamma")] = value
        return lam, md.ModelControls(theta=ctrl.theta, phi=ctrl.phi, t=1.0)
    if axis in model.param_names:
        lam = list(lam)
        lam[model.param_names.index(axis)] = value
        return lam, ctrl
    if axis in ("theta", "phi", "t") and model.uses_controls:
        return lam, md.ModelControls(**{**ctrl.__dict__, axis: value})
    raise UsageError(f"axis {axis!r} is neither a parameter nor a control of {model.name}")


def cmd_models(args) -> int:
    for name in sorted(md.MODELS):
        model = md.MODELS[name]
        params = ", ".join(model.param_names)
        print(
            f"{name}: {model.n_params} parameters ({params}); "
            f"domain {model.domain_note}; classification hint: {model.classification_hint}"
        )
    return 0


def cmd_bounds(args) -> int:
    model = md.get_model(args.model)
    spec = parse_weight(args.weight)
    lam, ctrl = gather_values(args, model)
    row = point_row(model, lam, ctrl, spec, row_seed=args.seed)
    payload = {
        "model": model.name,
        "params": dict(zip(model.param_names, lam)),
        "controls": {"theta": ctrl.theta, "phi": ctrl.phi, "t": ctrl.t} if model.uses_controls else {},
    }
    payload.update(row_to_json(None, row))
    del payload["axis"]
    print(json.dumps(payload, allow_nan=False))
    return 0


def _parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError("range must be start,stop,count")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 2:
        raise UsageError("range count must be >= 2")
    return start, stop, count


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def cmd_sweep(args) -> int:
    model = md.get_model(args.model)
    spec = parse_weight(args.weight)
    start, stop, count = _parse_range(args.range)
    if args.axis == "theta":
        # the information matrices degenerate at the poles
        lo, hi = args.theta_margin, math.pi - args.theta_margin
        clipped = (min(max(start, lo), hi), min(max(stop, lo), hi))
        if clipped != (start, stop):
            print(
                f"theta range clipped to [{clipped[0]:.6g}, {clipped[1]:.6g}] "
                f"(margin {args.theta_margin:g})",
                file=sys.stderr,
            )
            start, stop = clipped
        if start >= stop:
            raise UsageError("theta range collapsed after clipping")
    lam0, ctrl0 = gather_values(args, model)
    axis_values = np.linspace(start, stop, count)

    rows = []
    failures = 0
    for idx, value in enumerate(axis_values):
        try:
            lam, ctrl = apply_axis(model, args.axis, float(value), lam0, ctrl0)
            row = point_row(model, lam, ctrl, spec, row_seed=[args.seed, idx])
        except ROW_ERRORS as exc:
            row = nan_row()
            failures += 1
            print(f"row {idx} (axis={value:.6g}): {exc}", file=sys.stderr)
        rows.append((float(value), row))

    if args.format == "csv":
        lines = [CSV_HEADER] + [row_to_csv(v, r) for v, r in rows]
        _write_text(args.out, "\n".join(lines) + "\n")
    else:
        doc = {
            "meta": {
                "model": model.name,
                "axis": args.axis,
                "fixed": {k: getattr(args, k) for k in PARAM_FLAGS},
                "weight": args.weight,
                "seed": args.seed,
                "version": __version__,
            },
            "rows": [row_to_json(v, r) for v, r in rows],
        }
        _write_text(args.out, json.dumps(doc, indent=2, allow_nan=False) + "\n")

    if failures:
        print(f"{failures} of {len(rows)} rows out of domain", file=sys.stderr)
        return 2
    return 0


def cmd_randw(args) -> int:
    model = md.get_model(args.model)
    lam, ctrl = gather_values(args, model)
    info = ig.model_information(model, lam, ctrl)
    cls = bd.classification_for_model(model, info)
    samples = bd.random_weight_sweep(info, cls, args.count, seed=args.seed)

    if info.n == 2:
        header = "i,delta_C,w_12,w_22"
        entries = lambda w: (w[0, 1], w[1, 1])
    else:
        header = "i,delta_C,w_12,w_13,w_22,w_23,w_33"
        entries = lambda w: (w[0, 1], w[0, 2], w[1, 1], w[1, 2], w[2, 2])
    lines = [header]
    for i, (w, dc) in enumerate(samples):
        lines.append(",".join([str(i), _fmt(dc)] + [_fmt(x) for x in entries(w)]))
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_selftest(args) -> int:
    results = run_selftest(seed=args.seed)
    failed = [r for r in results if not r.ok]
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'} {r.name}: {r.detail}")
    print(f"{len(results) - len(failed)}/{len(results)} suites passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quantumness",
        description="Precision bounds and incompatibility measures for qubit multiparameter models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("models", help="list available models").set_defaults(func=cmd_models)

    def add_point_flags(p):
        p.add_argument("--model", required=True, choices=sorted(md.MODELS))
        for name, (flag, default) in PARAM_FLAGS.items():
            p.add_argument(flag, dest=name, type=float, default=default)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--weight", default="identity", help="diag:a,b[,c] | bures | identity | opt | random:N")

    p_bounds = sub.add_parser("bounds", help="single-point bound report (JSON)")
    add_point_flags(p_bounds)
    p_bounds.set_defaults(func=cmd_bounds)

    p_sweep = sub.add_parser("sweep", help="evaluate bounds along one axis")
    add_point_flags(p_sweep)
    p_sweep.add_argument("--axis", required=True, help="parameter or control name, or gamma_t")
    p_sweep.add_argument("--range", required=True, help="start,stop,count")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--out", default=None, help="output path (default stdout)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_randw = sub.add_parser("randw", help="gap values for random weight matrices")
    add_point_flags(p_randw)
    p_randw.add_argument("--count", type=int, default=1000)
    p_randw.add_argument("--out", default=None, help="output path (default stdout)")
    p_randw.set_defaults(func=cmd_randw)

    p_self = sub.add_parser("selftest", help="run the invariant suites")
    p_self.add_argument("--seed", type=int, default=0)
    p_self.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ROW_ERRORS as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
