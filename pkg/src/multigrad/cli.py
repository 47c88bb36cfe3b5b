"""Command-line front end.

    multigrad dirs    --polygon 8 --span full | --polyhedron icosahedron [--seed N]
    multigrad frames  [--polygon K --span S | --polyhedron NAME | --all] [--list]
    multigrad grad    --field circle2:r=1 --point 3,4 --method multi-axis --set polygon:8
    multigrad errmap  --field circle0:r=1 --method single-axis --out map.pgm
    multigrad hsweep  --field expsin2d --point 0.5,0.5 --dir 1,0 --h 1e-1:1e-16:log,16

Exit codes: 0 success, 1 runtime error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from typing import Optional, Sequence

import numpy as np

from . import analysis
from .directional import DERIV_KINDS
from .directions import (
    POLYHEDRA,
    DirectionSet,
    find_orthonormal_frames,
    parse_set_spec,
    polygon_set,
    polyhedron_set,
    random_rotation,
    rotate_set,
    validate_set,
)
from .estimators import HART, METHODS, MULTI_AXIS, SINGLE_AXIS, EstimatorConfig, estimate
from .exceptions import MultigradError
from .fields import parse_field_spec

fmt = analysis.fmt


class UsageError(Exception):
    def __init__(self, flag: str, msg: str):
        super().__init__(f"{flag}: {msg}")
        self.flag = flag


def _floats(text: str, flag: str) -> list[float]:
    try:
        vals = [float(s) for s in text.split(",")]
    except ValueError:
        raise UsageError(flag, f"expected comma-separated numbers, got {text!r}") from None
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(flag, "values must be finite")
    return vals


def _field(text: str):
    try:
        return parse_field_spec(text)
    except ValueError as e:
        raise UsageError("--field", str(e)) from None


def _set(text: str) -> DirectionSet:
    try:
        return parse_set_spec(text)
    except ValueError as e:
        raise UsageError("--set", str(e)) from None


def _csv_vectors(v: np.ndarray) -> str:
    names = "xyz"[: v.shape[1]]
    lines = [",".join(names)]
    lines += [",".join(fmt(c) for c in row) for row in v]
    return "\n".join(lines) + "\n"


# -- subcommands


def _source_set(args) -> DirectionSet:
    if args.polyhedron and args.polygon:
        raise UsageError("--polyhedron", "give either --polygon or --polyhedron, not both")
    if args.polyhedron:
        try:
            s = polyhedron_set(args.polyhedron)
        except ValueError as e:
            raise UsageError("--polyhedron", str(e)) from None
    elif args.polygon:
        try:
            s = polygon_set(args.polygon, args.span)
        except ValueError as e:
            raise UsageError("--polygon", str(e)) from None
    else:
        raise UsageError("--polygon", "one of --polygon or --polyhedron is required")
    return s


def cmd_dirs(args, out) -> int:
    s = _source_set(args)
    if args.dim is not None and args.dim != s.dim:
        raise UsageError("--dim", f"{s.source} is {s.dim}-D, not {args.dim}-D")
    if args.seed is not None:
        s = rotate_set(s, random_rotation(s.dim, args.seed))
    out.write(_csv_vectors(s.vectors))
    return 0


def cmd_frames(args, out) -> int:
    if args.all:
        sets = [polygon_set(k, "full") for k in (4, 6, 8, 12, 16)]
        sets += [polyhedron_set(name) for name in POLYHEDRA]
    else:
        sets = [_source_set(args)]
    if args.seed is not None:
        sets = [rotate_set(s, random_rotation(s.dim, args.seed)) for s in sets]
    w = csv.writer(out, lineterminator="\n")
    if args.list:
        w.writerow(["set", "frame", "axis", "x", "y", "z"])
        for s in sets:
            for i, fr in enumerate(find_orthonormal_frames(s, args.tol)):
                for j, axis in enumerate(fr.axes):
                    coords = [fmt(c) for c in axis] + [""] * (3 - len(axis))
                    w.writerow([s.source, i, j, *coords])
    else:
        w.writerow(["set", "vectors", "lines", "frames", "centroid_norm", "min_angle_deg"])
        for s in sets:
            r = validate_set(s, args.tol)
            w.writerow([s.source, r.n_vectors, r.n_lines, r.frame_count,
                        fmt(r.centroid_norm), fmt(r.min_angle_deg)])
    return 0


def _config(args, dim: int) -> EstimatorConfig:
    dirs = None
    if args.set is not None:
        dirs = _set(args.set)
        if dirs.dim != dim:
            raise UsageError("--set", f"dimension mismatch: {dim}-D field/point, {dirs.dim}-D set {dirs.source}")
        if args.method in (SINGLE_AXIS, MULTI_AXIS) and not find_orthonormal_frames(dirs):
            raise UsageError("--set", f"{dirs.source} contains no orthonormal frame")
    elif args.method not in (SINGLE_AXIS,):
        raise UsageError("--set", f"--method {args.method} needs a direction set")
    try:
        return EstimatorConfig(
            method=args.method,
            deriv_kind=args.deriv,
            h=args.h,
            directions=dirs,
            probe_radius=args.radius,
            seed=args.seed,
        )
    except ValueError as e:
        raise UsageError("--h" if "h" in str(e) else "--method", str(e)) from None


def cmd_grad(args, out) -> int:
    f = _field(args.field)
    p = _floats(args.point, "--point")
    if len(p) != f.dim:
        raise UsageError("--point", f"dimension mismatch: {len(p)}-D point, {f.dim}-D field {f.name}")
    cfg = _config(args, f.dim)
    g = estimate(f, p, cfg)
    comps = " ".join(f"g{i}={fmt(c)}" for i, c in enumerate(g.vector))
    h = "none" if g.method == HART else fmt(g.h)
    extra = f" radius={fmt(g.h)}" if g.method == HART else ""
    out.write(f"method={g.method} deriv={g.deriv_kind} h={h}{extra} K={g.k} "
              f"normalization={fmt(g.normalization)} {comps}\n")
    return 0


def cmd_errmap(args, out) -> int:
    f = _field(args.field)
    if f.dim != 2:
        raise UsageError("--field", f"error maps need a 2-D field, {f.name} is {f.dim}-D")
    bounds = _floats(args.bounds, "--bounds")
    if len(bounds) != 4 or not (bounds[0] < bounds[1] and bounds[2] < bounds[3]):
        raise UsageError("--bounds", "expected xmin,xmax,ymin,ymax with xmin<xmax and ymin<ymax")
    try:
        w, _, hgt = args.size.lower().partition("x")
        width, height = int(w), int(hgt)
    except ValueError:
        raise UsageError("--size", f"expected WxH, got {args.size!r}") from None
    if width < 1 or height < 1:
        raise UsageError("--size", "width and height must be >= 1")
    cfg = _config(args, 2)
    grid = analysis.error_map(f, cfg, bounds, width, height, args.exclude, args.workers)
    if args.out:
        analysis.write_pgm(grid, args.out)
    stats = analysis.error_stats(grid).csv()
    if args.csv:
        with open(args.csv, "w", newline="\n") as fh:
            fh.write(stats)
    out.write(stats)
    return 0


def cmd_hsweep(args, out) -> int:
    f = _field(args.field)
    p = _floats(args.point, "--point")
    if len(p) != f.dim:
        raise UsageError("--point", f"dimension mismatch: {len(p)}-D point, {f.dim}-D field {f.name}")
    d = np.array(_floats(args.dir, "--dir"))
    if len(d) != f.dim:
        raise UsageError("--dir", f"dimension mismatch: {len(d)}-D direction, {f.dim}-D field")
    norm = float(np.linalg.norm(d))
    if norm == 0.0:
        raise UsageError("--dir", "direction must be non-zero")
    d = d / norm
    kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
    bad = [k for k in kinds if k not in DERIV_KINDS]
    if bad or not kinds:
        raise UsageError("--kinds", f"unknown derivative kind(s) {bad}; choose from {DERIV_KINDS}")
    try:
        hs = analysis.parse_h_range(args.h)
    except ValueError as e:
        raise UsageError("--h", str(e)) from None
    rows = analysis.h_sweep(f, p, d, hs, kinds)
    text = analysis.sweep_csv(rows)
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    out.write(text)
    return 0


# -- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(self.prog, message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="multigrad", description="Gradient estimation from averaged directional derivatives.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_source(sp):
        sp.add_argument("--polygon", type=int, metavar="K", help="regular K-gon directions (2-D)")
        sp.add_argument("--span", choices=("half", "full"), default="full", help="polygon span (default full)")
        sp.add_argument("--polyhedron", metavar="NAME", help=f"one of {', '.join(POLYHEDRA)}")
        sp.add_argument("--seed", type=int, help="apply a Haar-random rotation drawn from this seed")

    sp = sub.add_parser("dirs", help="print a direction set as CSV")
    sp.add_argument("--dim", type=int, choices=(2, 3))
    add_source(sp)
    sp.set_defaults(func=cmd_dirs)

    sp = sub.add_parser("frames", help="report orthonormal frames found in direction sets")
    add_source(sp)
    sp.add_argument("--all", action="store_true", help="report every shipped polyhedron and common polygons")
    sp.add_argument("--list", action="store_true", help="list frame axes instead of counts")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.set_defaults(func=cmd_frames)

    def add_estimator(sp):
        sp.add_argument("--field", required=True, help="name:key=val,... e.g. circle2:r=1")
        sp.add_argument("--method", choices=METHODS, default=SINGLE_AXIS)
        sp.add_argument("--deriv", choices=DERIV_KINDS, default="complex")
        sp.add_argument("--h", type=float, help="step size (default 1e-6 central, 1e-100 complex)")
        sp.add_argument("--set", help="polygon:K[:half|full] or a polyhedron name")
        sp.add_argument("--radius", type=float, default=1.0, help="hart probe radius")
        sp.add_argument("--seed", type=int, help="random rotation per query point")

    sp = sub.add_parser("grad", help="estimate a gradient at one point")
    add_estimator(sp)
    sp.add_argument("--point", required=True)
    sp.set_defaults(func=cmd_grad)

    sp = sub.add_parser("errmap", help="angle-error map against the analytic gradient")
    add_estimator(sp)
    sp.add_argument("--bounds", default="-2,2,-2,2", help="xmin,xmax,ymin,ymax")
    sp.add_argument("--size", default="64x64", help="WxH pixels")
    sp.add_argument("--exclude", type=float, default=1e-6, help="skip pixels with analytic gradient norm below this")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", help="16-bit PGM output path")
    sp.add_argument("--csv", help="write the statistics CSV here as well")
    sp.set_defaults(func=cmd_errmap)

    sp = sub.add_parser("hsweep", help="directional-derivative error versus step size")
    sp.add_argument("--field", required=True)
    sp.add_argument("--point", required=True)
    sp.add_argument("--dir", required=True, help="direction (normalized internally)")
    sp.add_argument("--kinds", default="central,complex")
    sp.add_argument("--h", default="1e-1:1e-16:log,16", help="start:stop:log|lin[,count] or a comma list")
    sp.add_argument("--out", help="write the CSV here as well")
    sp.set_defaults(func=cmd_hsweep)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as e:
        err.write(f"usage error: {e}\n")
        return 2
    except (MultigradError, ValueError, OSError) as e:
        err.write(f"error: {e}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
