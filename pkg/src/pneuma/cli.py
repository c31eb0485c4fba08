"""Command-line front end: ``pneuma {convert,trajectory,sample,wigner,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import dynamics as dyn
from . import wavefunctions as wf
from .states import (
    DomainError,
    LegacyParams,
    ModernInitialData,
    legacy_from_modern,
    modern_from_legacy,
    normalize_legacy_signs,
)
from .verify import SUITES, run_verification

MODERN_FLAGS = ("q0", "p0", "zeta_r", "zeta_theta")
LEGACY_FLAGS = ("alpha0", "beta0", "delta0", "epsilon0")

TRAJECTORY_COLUMNS = ["t", "q", "p", "u", "v", "re_zeta", "im_zeta", "alpha", "beta", "gamma",
                      "delta", "epsilon", "kappa", "phi", "f_minus", "f_plus"]
SAMPLE_COLUMNS = ["x", "re_psi", "im_psi", "abs2_psi", "p_x"]


class UsageError(Exception):
    pass


def fmt(value) -> str:
    # + 0.0 turns -0.0 into 0.0
    return format(float(value) + 0.0, ".17g")


def parse_grid(text: str, name: str, min_points: int = 2):
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise UsageError(f"--{name} expects start:stop:n, got {text!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi)) or n < min_points:
        raise UsageError(f"--{name}: bounds must be finite and n >= {min_points}")
    if n > 1 and not hi > lo:
        raise UsageError(f"--{name}: stop must exceed start")
    return np.linspace(lo, hi, n)


def parse_tolerances(items):
    out = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--tol expects NAME=VALUE, got {item!r}")
        try:
            out[name] = float(value)
        except ValueError:
            raise UsageError(f"--tol {name}: not a number: {value!r}") from None
    return out


def given(args, names):
    return [n for n in names if getattr(args, n, None) is not None]


def legacy_input(args) -> LegacyParams:
    vals = {n: getattr(args, n) or 0.0 for n in LEGACY_FLAGS}
    return LegacyParams(vals["alpha0"], vals["beta0"], getattr(args, "gamma0", None) or 0.0,
                        vals["delta0"], vals["epsilon0"], getattr(args, "kappa0", None) or 0.0)


def modern_input(args) -> ModernInitialData:
    vals = {n: getattr(args, n) or 0.0 for n in MODERN_FLAGS}
    return ModernInitialData.from_polar(vals["q0"], vals["p0"], vals["zeta_r"], vals["zeta_theta"])


def initial_data(args) -> tuple[str, ModernInitialData, LegacyParams]:
    """Canonical modern initial data plus the matching legacy initial data."""
    modern, legacy = given(args, MODERN_FLAGS), given(args, LEGACY_FLAGS)
    if modern and legacy:
        raise UsageError("give either modern (--q0 --p0 --zeta-r --zeta-theta) "
                         "or legacy (--alpha0 --beta0 --delta0 --epsilon0) flags, not both")
    if not modern and not legacy:
        raise UsageError("no initial data given")
    if legacy:
        if args.beta0 is None:
            raise UsageError("--beta0 is required for legacy input")
        params = normalize_legacy_signs(legacy_input(args))
        return "legacy", ModernInitialData.from_legacy(params), params
    init = modern_input(args)
    return "modern", init, legacy_from_modern(dyn.snapshot_at(init, 0.0))


def write_output(args, columns, rows, meta):
    if args.format == "json":
        data = {c: [float(r[i]) + 0.0 for r in rows] for i, c in enumerate(columns)}
        text = json.dumps({"meta": meta, "data": data}, indent=1) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows([fmt(v) for v in row] for row in rows)
        text = buf.getvalue()
    emit(args, text)


def emit(args, text):
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_convert(args):
    source, init, legacy = initial_data(args)
    if source == "legacy":
        snap = modern_from_legacy(legacy_input(args))
        zeta = ModernInitialData.from_snapshot(snap).zeta0
        columns = ["q", "p", "u", "v", "re_zeta", "im_zeta", "zeta_r", "zeta_theta", "phi"]
        row = [snap.q, snap.p, snap.u, snap.v, zeta.zeta.real, zeta.zeta.imag,
               zeta.r, zeta.theta, snap.phi]
    else:
        columns = ["alpha", "beta", "gamma", "delta", "epsilon", "kappa"]
        row = [legacy.alpha, legacy.beta, legacy.gamma, legacy.delta, legacy.epsilon, legacy.kappa]
    write_output(args, columns, [row], {"command": "convert", "from": source})
    return 0


def time_values(args):
    if args.t_grid is not None and args.t is not None:
        raise UsageError("give --t or --t-grid, not both")
    if args.t_grid is not None:
        return parse_grid(args.t_grid, "t-grid", min_points=1)
    return np.array([args.t if args.t is not None else 0.0])


def cmd_trajectory(args):
    source, init, legacy = initial_data(args)
    ts = time_values(args)
    snap = dyn.snapshot_at(init, ts)
    zeta = dyn.disk_at(init, ts).zeta
    old = dyn.legacy_trajectory(legacy, ts)
    widths = dyn.breathing_widths(init.zeta0, ts)
    cols = [ts, snap.q, snap.p, snap.u, snap.v, zeta.real, zeta.imag, old.alpha, old.beta,
            old.gamma, old.delta, old.epsilon, old.kappa, snap.phi, widths.f_minus, widths.f_plus]
    rows = np.column_stack([np.broadcast_to(c, ts.shape) for c in cols])
    write_output(args, TRAJECTORY_COLUMNS, rows, {"command": "trajectory", "from": source})
    return 0


def cmd_sample(args):
    source, init, _ = initial_data(args)
    if args.x_grid is None:
        raise UsageError("--x-grid is required")
    xs = parse_grid(args.x_grid, "x-grid")
    t = args.t or 0.0
    snap = dyn.snapshot_at(init, t)
    values = wf.psi_snapshot(xs, snap)
    rows = np.column_stack([xs, values.real, values.imag, np.abs(values) ** 2,
                            wf.position_density(xs, snap)])
    write_output(args, SAMPLE_COLUMNS, rows, {"command": "sample", "from": source, "t": t})
    return 0


def cmd_wigner(args):
    source, init, _ = initial_data(args)
    if args.x_grid is None or args.p_grid is None:
        raise UsageError("--x-grid and --p-grid are required")
    xs = parse_grid(args.x_grid, "x-grid")
    ps = parse_grid(args.p_grid, "p-grid")
    t = args.t or 0.0
    snap = dyn.snapshot_at(init, t)
    r0 = float(init.zeta0.r)
    meta = {
        "command": "wigner",
        "from": source,
        "t": t,
        "q_t": float(snap.q),
        "p_t": float(snap.p),
        "r0": r0,
        "theta0": float(init.zeta0.theta),
        "zeta_angle": float(init.zeta0.theta) - 2 * t,
        **{k: v for k, v in dyn.eccentricity_diagnostics(r0).items() if k != "r0"},
    }
    X, P = np.meshgrid(xs, ps, indexing="ij")
    W = wf.wigner(X, P, snap)
    if args.format == "json":
        payload = {"meta": meta, "data": {"x": xs.tolist(), "p": ps.tolist(), "w": W.tolist()}}
        emit(args, json.dumps(payload, indent=1) + "\n")
        return 0
    rows = np.column_stack([X.ravel(), P.ravel(), W.ravel()])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "p", "w"])
    writer.writerows([fmt(v) for v in row] for row in rows)
    emit(args, buf.getvalue())
    if args.out:
        with open(args.out + ".meta.json", "w", newline="\n") as fh:
            fh.write(json.dumps(meta, indent=1) + "\n")
    return 0


def cmd_verify(args):
    suites = []
    for item in args.suite or []:
        suites += [s for s in item.split(",") if s]
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    try:
        report = run_verification(suites or None, seed=args.seed,
                                  tolerances=parse_tolerances(args.tol), perturb_u=args.perturb_u)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    emit(args, json.dumps(report, indent=1, default=float) + "\n")
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    m = common.add_argument_group("modern initial data")
    m.add_argument("--q0", type=float)
    m.add_argument("--p0", type=float)
    m.add_argument("--zeta-r", type=float)
    m.add_argument("--zeta-theta", type=float)
    g = common.add_argument_group("legacy initial data")
    g.add_argument("--alpha0", type=float)
    g.add_argument("--beta0", type=float)
    g.add_argument("--delta0", type=float)
    g.add_argument("--epsilon0", type=float)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--out", metavar="PATH")

    parser = argparse.ArgumentParser(prog="pneuma", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", parents=[common], help="convert between parametrizations")
    p.add_argument("--gamma0", type=float)
    p.add_argument("--kappa0", type=float)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("trajectory", parents=[common], help="evolve in both parametrizations")
    p.add_argument("--t", type=float)
    p.add_argument("--t-grid", metavar="START:STOP:N")
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("sample", parents=[common], help="sample psi on an x grid")
    p.add_argument("--t", type=float)
    p.add_argument("--x-grid", metavar="MIN:MAX:N")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("wigner", parents=[common], help="Wigner function on an (x, p) grid")
    p.add_argument("--t", type=float)
    p.add_argument("--x-grid", metavar="MIN:MAX:N")
    p.add_argument("--p-grid", metavar="MIN:MAX:N")
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("verify", help="run verification suites, JSON report")
    p.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES)} (repeatable)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", action="append", metavar="NAME=VALUE")
    p.add_argument("--perturb-u", type=float, default=0.0,
                   help="test hook: scale u by (1 + value) in the modern route")
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_verify)
    return parser


GRID_FLAGS = ("--t-grid", "--x-grid", "--p-grid")


def _attach_grid_values(argv):
    # grids such as "-6:6:121" start with '-' and would be read as flags
    out, it = [], iter(argv)
    for item in it:
        if item in GRID_FLAGS:
            value = next(it, None)
            out.append(item if value is None else f"{item}={value}")
        else:
            out.append(item)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_grid_values(argv))
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"pneuma {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
