"""Central difference vs complex step across step sizes on exp(x) sin(y).

    python scripts/hsweep_table.py [--out sweep.csv]
"""

import argparse

import numpy as np

from multigrad.analysis import h_sweep, sweep_csv
from multigrad.fields import corpus_field


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--point", default="0.5,0.5")
    ap.add_argument("--out")
    args = ap.parse_args()

    f = corpus_field("expsin2d")
    p = [float(v) for v in args.point.split(",")]
    n = np.array([1.0, 1.0]) / np.sqrt(2.0)
    hs = [10.0 ** -k for k in range(1, 17)] + [1e-50, 1e-100, 1e-200]
    rows = h_sweep(f, p, n, hs, ["central", "complex", "complex-line-avg"])

    print(f"{'h':>8}  {'central':>10}  {'complex':>10}  {'line-avg':>10}")
    by = {(r.kind, r.h): r.abs_error for r in rows}
    for h in hs:
        print(f"{h:8.0e}  {by['central', h]:10.2e}  {by['complex', h]:10.2e}  {by['complex-line-avg', h]:10.2e}")
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(sweep_csv(rows))


if __name__ == "__main__":
    main()
