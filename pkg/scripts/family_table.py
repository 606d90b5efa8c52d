"""Lattice-point counts of the triangles (-m,-1), (m,-1), (0, 1/(m-1)).

Each has the origin as its only interior lattice point while G grows
without bound, so no bound on G in terms of interior points alone exists
once the centroid condition is dropped.
"""

import argparse

from centroid_lattice.lattice import enumerate_lattice_points, unbounded_family
from centroid_lattice.polytope import centroid


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-m", type=int, default=20)
    args = ap.parse_args()
    print(f"{'m':>4} {'G':>5} {'int':>4} {'2m+1':>5}  centroid")
    for m in range(2, args.max_m + 1):
        body = unbounded_family(m)
        lat = enumerate_lattice_points(body)
        c = ", ".join(str(x) for x in centroid(body))
        print(f"{m:>4} {lat.count:>5} {lat.interior_count:>4} {2 * m + 1:>5}  ({c})")


if __name__ == "__main__":
    main()
