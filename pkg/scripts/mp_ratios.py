"""Smallest vol(K cap -K)/vol(K) seen per dimension, next to 2^-d and (2/e)^d.

Data only; nothing here is asserted beyond the 2^-d bound.
"""

import argparse
import math
from fractions import Fraction

from centroid_lattice.bounds import milman_pajor_check
from centroid_lattice.harness import SearchConfig, random_centroid_body
from centroid_lattice.polytope import ehrhart_simplex


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for d in (2, 3):
        cfg = SearchConfig(dim=d, modes=("random_polytopes",), sample_count=args.samples, rng_seed=args.seed)
        ratios = [milman_pajor_check(random_centroid_body(cfg, i)).value for i in range(args.samples)]
        simplex = milman_pajor_check(ehrhart_simplex(d).polytope).value
        lo = min(ratios)
        print(
            f"d={d}: simplex {simplex} ({float(simplex):.4f}), random min {lo} ({float(lo):.4f}), "
            f"2^-d {Fraction(1, 2 ** d)}, (2/e)^d {(2 / math.e) ** d:.4f}"
        )


if __name__ == "__main__":
    main()
