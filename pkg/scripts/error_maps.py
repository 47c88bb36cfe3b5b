"""Error maps for every estimator / derivative combination on the circle fields.

Writes one 16-bit PGM per (field, method, derivative) plus a stats.csv
summarising the angle error of each.

    python scripts/error_maps.py --out-dir maps [--size 128] [--seed 1]
"""

import argparse
import csv
import os

from multigrad.analysis import error_map, error_stats, fmt, write_pgm
from multigrad.directions import find_orthonormal_frames, polygon_set
from multigrad.estimators import EstimatorConfig
from multigrad.fields import parse_field_spec

FIELDS = ["circle0:r=1", "circle1:r=1", "circle2:r=1", "circle3:r=1,a=3", "expsin2d"]


def configs(seed):
    frames = find_orthonormal_frames(polygon_set(16, "full"))
    for kind, h in (("central", 1e-6), ("complex", 1e-100)):
        yield EstimatorConfig("single-axis", kind, h, seed=seed)
        yield EstimatorConfig("multi-axis", kind, h, frames, seed=seed)
        yield EstimatorConfig("multi-vector", kind, h, polygon_set(7, "full"), seed=seed)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", default="maps")
    ap.add_argument("--size", type=int, default=128)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    os.makedirs(args.out_dir, exist_ok=True)

    with open(os.path.join(args.out_dir, "stats.csv"), "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["field", "method", "deriv", "eps_mean", "angle_median_deg", "angle_max_deg", "n_degenerate"])
        for spec in FIELDS:
            f = parse_field_spec(spec)
            for cfg in configs(args.seed):
                grid = error_map(f, cfg, (-2, 2, -2, 2), args.size, args.size, 1e-6, args.workers)
                name = f"{f.name}_{cfg.method}_{cfg.deriv_kind}.pgm"
                write_pgm(grid, os.path.join(args.out_dir, name))
                st = error_stats(grid)
                w.writerow([spec, cfg.method, cfg.deriv_kind, fmt(st.eps_mean),
                            fmt(st.angle_median_deg), fmt(st.angle_max_deg), st.n_degenerate])
                print(f"{spec:18} {cfg.method:13} {cfg.deriv_kind:8} median {st.angle_median_deg:9.2e} deg"
                      f"  max {st.angle_max_deg:9.2e} deg")


if __name__ == "__main__":
    main()
