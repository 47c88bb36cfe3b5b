"""Exhaustive orthonormal-frame search over the shipped direction sets.

Also re-runs the search on randomly rotated copies to show the counts are
rotation invariant.

    python scripts/frame_census.py [--rotations 20]
"""

import argparse

from multigrad.directions import POLYHEDRA, polygon_set, polyhedron_set, random_rotation, rotate_set, validate_set


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rotations", type=int, default=20)
    args = ap.parse_args()

    sets = [polygon_set(k, span) for k in (4, 6, 8, 10, 12, 16) for span in ("half", "full")]
    sets += [polyhedron_set(name) for name in POLYHEDRA]
    print(f"{'set':34} {'K':>3} {'lines':>5} {'frames':>6} {'min angle':>9}  rotated counts")
    for s in sets:
        r = validate_set(s)
        rotated = {validate_set(rotate_set(s, random_rotation(s.dim, seed))).frame_count
                   for seed in range(args.rotations)}
        print(f"{s.source:34} {r.n_vectors:3d} {r.n_lines:5d} {r.frame_count:6d} "
              f"{r.min_angle_deg:9.3f}  {sorted(rotated)}")


if __name__ == "__main__":
    main()
