"""Command-line front end.

Subcommands: ``solve``, ``verify``, ``sample``, ``region``, ``profile-curve``
and ``streamlines``. Tables are written as comma-separated values with a
header row; records (``solve``, ``verify``) as JSON. Output goes to ``--out``
or to standard output.

Exit codes: 0 success, 2 invalid arguments, 3 parameters outside the
existence region, 4 degenerate boundary, 5 verification failure, 6 I/O error.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import fields

import numpy as np

from .diagnostics import VerifyConfig, torque_formula, verify
from .flowfield import (
    GeneralizedSpiral,
    HamelN0,
    HamelN0A,
    StokesQuadrupole,
    StokesTorque,
    streamline,
    to_cartesian,
)
from .profile import (
    DegenerateProfile,
    InternalInconsistency,
    ModulusRangeError,
    NoSolution,
    SolutionParams,
    build_profile,
    eval_phi,
    flux_bound,
    flux_closed_form,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REGION = 3
EXIT_DEGENERATE = 4
EXIT_VERIFY = 5
EXIT_IO = 6

FIELD_KINDS = ("spiral", "hamel0", "hamel0a", "stokes-torque", "stokes-quadrupole")


class UsageError(Exception):
    pass


def fmt(value):
    """17 significant digits, enough to round-trip a double."""
    return format(float(value), ".17g")


def _write(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {out}: {exc.strerror or exc}") from exc


def _csv(header, rows):
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(v if isinstance(v, str) else fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _json(record):
    return json.dumps(record, indent=2, allow_nan=True) + "\n"


def _params(args):
    if args.n is None or args.flux is None or args.a is None:
        raise UsageError("--n, --flux and --a are required")
    try:
        return SolutionParams(args.n, args.flux, args.a, args.theta0)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _field(args):
    kind = args.field
    try:
        if kind == "spiral":
            params = _params(args)
            return GeneralizedSpiral(params, build_profile(params))
        if kind == "hamel0":
            return HamelN0(_need(args, "flux"), args.mu)
        if kind == "hamel0a":
            return HamelN0A(_need(args, "flux"), args.mu, args.A)
        if kind == "stokes-torque":
            return StokesTorque(args.m)
        return StokesQuadrupole(args.q)
    except (NoSolution, DegenerateProfile, ModulusRangeError):
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required for field {args.field}")
    return value


def _profile_record(profile):
    p = profile.params
    phi1, phi2, phi3 = profile.roots
    return {
        "inputs": {"n": p.n, "flux": p.flux, "a": p.a, "theta0": p.theta0, "mu": p.mu},
        "flux_max": flux_bound(p.n, p.a),
        "alpha": profile.alpha,
        "roots": {"phi1": phi1, "phi2": phi2, "phi3": phi3},
        "c_const": profile.c_const,
        "energy": profile.energy,
        "kappa": profile.kappa,
        "flux_closed_form": flux_closed_form(profile),
        "torque_formula": torque_formula(profile),
    }


def cmd_solve(args):
    params = _params(args)
    profile = build_profile(params)
    _write(_json(_profile_record(profile)), args.out)
    return EXIT_OK


def _verify_config(args):
    overrides = {"seed": args.seed}
    if args.samples is not None:
        overrides["samples"] = args.samples
    for f in fields(VerifyConfig):
        if f.name.startswith("tol_"):
            value = getattr(args, f.name)
            if value is not None:
                overrides[f.name] = value
    return VerifyConfig(**overrides)


def cmd_verify(args):
    report = verify(_field(args), _verify_config(args))
    _write(_json(report.to_dict()), args.out)
    if not report.all_passed:
        failed = ", ".join(k for k, v in report.passed.items() if not v)
        print(f"verification failed: {failed}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _grid(args):
    if not (args.rmin > 0 and args.rmax > args.rmin):
        raise UsageError("grid requires 0 < rmin < rmax")
    if args.nr < 2 or args.ntheta < 2:
        raise UsageError("grid requires at least 2 nodes per direction")
    r = np.exp(np.linspace(math.log(args.rmin), math.log(args.rmax), args.nr))
    theta = -math.pi + 2.0 * math.pi * np.arange(args.ntheta) / args.ntheta
    R, T = np.meshgrid(r, theta, indexing="ij")
    return R.ravel(), T.ravel()


SAMPLE_COLUMNS = ("r", "theta", "x", "y", "u_r", "u_theta", "u_x", "u_y",
                  "p", "omega", "psi", "r_times_speed")


def cmd_sample(args):
    field = _field(args)
    r, theta = _grid(args)
    s = field.evaluate(r, theta)
    ux, uy = to_cartesian(s, theta)
    cols = (r, theta, r * np.cos(theta), r * np.sin(theta), s.u_r, s.u_theta, ux, uy,
            s.p, s.omega, s.psi, r * np.hypot(s.u_r, s.u_theta))
    _write(_csv(SAMPLE_COLUMNS, zip(*cols)), args.out)
    return EXIT_OK


def cmd_region(args):
    if args.n_max < 1:
        raise UsageError("--n-max must be at least 1")
    if args.na < 2:
        raise UsageError("--na must be at least 2")
    a_values = np.linspace(args.a_min, args.a_max, args.na)
    rows = []
    for n in range(1, args.n_max + 1):
        rows.extend(("parabola", n, a, flux_bound(n, a)) for a in a_values)
    rows.extend(("hamel_exists", 0, a, -2.0 * math.pi) for a in a_values)
    rows.extend(("hamel_decay_r1", 0, a, -4.0 * math.pi) for a in a_values)
    _write(_csv(("curve", "n", "a", "flux"), rows), args.out)
    return EXIT_OK


def cmd_profile_curve(args):
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    params = _params(args)
    profile = build_profile(params)
    z = np.linspace(0.0, 2.0 * math.pi, args.samples)
    phi, dphi, _ = eval_phi(profile, z)
    _write(_csv(("z", "phi", "dphi"), zip(z, phi, dphi)), args.out)
    return EXIT_OK


def _parse_start(text):
    try:
        r, theta = (float(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected R,THETA, got {text!r}") from exc
    if not r > 0:
        raise argparse.ArgumentTypeError("seed radius must be positive")
    return r, theta


def cmd_streamlines(args):
    field = _field(args)
    starts = args.start or [(1.0, 0.0)]
    rows = []
    for index, seed in enumerate(starts):
        line = streamline(field, seed, args.arc_span, step_control=args.rtol,
                          r_min=args.cut_rmin, r_max=args.cut_rmax,
                          direction=args.direction)
        note = ";".join(f"{k}={v}" for k, v in sorted(line.status.items()))
        x0, y0 = seed[0] * math.cos(seed[1]), seed[0] * math.sin(seed[1])
        rows.append((str(index), "meta", x0, y0, note))
        rows.extend((str(index), "point", x, y, "") for x, y in line.points)
    _write(_csv(("line", "role", "x", "y", "note"), rows), args.out)
    return EXIT_OK


def _add_params(p):
    p.add_argument("--n", type=int, help="number of branches (n >= 1)")
    p.add_argument("--flux", type=float, help="flux through a curve around the origin")
    p.add_argument("--a", type=float, help="spiral parameter")
    p.add_argument("--theta0", type=float, default=0.0, help="phase in radians (default 0)")


def _add_field(p):
    p.add_argument("--field", choices=FIELD_KINDS, default="spiral")
    _add_params(p)
    p.add_argument("--mu", type=float, default=0.0, help="swirl of the Hamel n=0 fields")
    p.add_argument("--A", type=float, default=0.0, help="amplitude of the non-scale-invariant Hamel term")
    p.add_argument("--m", type=float, default=4.0 * math.pi, help="Stokes torque moment")
    p.add_argument("--q", type=float, default=4.0 * math.pi, help="Stokes quadrupole moment")


def build_parser():
    parser = argparse.ArgumentParser(prog="spiralflow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="resolve the periodic profile for (n, flux, a)")
    _add_params(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run the verification suite on a field")
    _add_field(p)
    p.add_argument("--seed", type=int, default=VerifyConfig.seed)
    p.add_argument("--samples", type=int)
    for f in fields(VerifyConfig):
        if f.name.startswith("tol_"):
            p.add_argument("--" + f.name.replace("_", "-"), dest=f.name, type=float,
                           help=f"default {f.default:g}")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="tabulate a field on a log-polar grid")
    _add_field(p)
    p.add_argument("--rmin", type=float, default=0.1)
    p.add_argument("--rmax", type=float, default=10.0)
    p.add_argument("--nr", type=int, default=64)
    p.add_argument("--ntheta", type=int, default=128)
    p.add_argument("--seed", type=int, default=VerifyConfig.seed, help="unused; accepted for uniformity")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser(
        "region", help="tabulate the existence region boundaries",
        description="Tabulate the parabolas flux_max(n, a) and the n=0 Hamel lines. The critical "
                    "curve for faster-than-1/r decay of the linearized problem has no closed form "
                    "here and is not included.")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--a-min", type=float, default=-3.0)
    p.add_argument("--a-max", type=float, default=3.0)
    p.add_argument("--na", type=int, default=121)
    p.add_argument("--out")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("profile-curve", help="tabulate phi and phi' over z in [0, 2 pi]")
    _add_params(p)
    p.add_argument("--samples", type=int, default=2401)
    p.add_argument("--out")
    p.set_defaults(func=cmd_profile_curve)

    p = sub.add_parser("streamlines", help="trace streamlines through seed points")
    _add_field(p)
    p.add_argument("--start", type=_parse_start, action="append",
                   help="seed point R,THETA (repeatable; default 1,0)")
    p.add_argument("--arc-span", type=float, default=20.0)
    p.add_argument("--rtol", type=float, default=1e-8)
    p.add_argument("--direction", choices=("both", "forward", "backward"), default="both")
    p.add_argument("--cut-rmin", type=float, default=1e-2)
    p.add_argument("--cut-rmax", type=float, default=1e2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_streamlines)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoSolution, ModulusRangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REGION
    except DegenerateProfile as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except InternalInconsistency as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
