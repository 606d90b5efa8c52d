"""Run the search harness from a JSON config and write the summary.

    python3 scripts/run_search.py scripts/configs/thm3_d2_n5.json --out results/thm3.json
"""

import argparse
import json
import logging
from pathlib import Path

from centroid_lattice.harness import SearchConfig, run_suite, write_replays


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("config")
    ap.add_argument("--out", default=None, help="summary JSON path (default: stdout)")
    ap.add_argument("--jobs", type=int, default=None)
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--replays", default=None, help="directory for violating bodies")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

    data = json.loads(Path(args.config).read_text())
    if args.jobs is not None:
        data["parallelism"] = args.jobs
    if args.seed is not None:
        data["rng_seed"] = args.seed
    summary = run_suite(SearchConfig.from_json(data))
    if args.replays:
        write_replays(summary, args.replays)

    text = json.dumps(summary.to_json(), indent=1)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    logging.info(
        "%d bodies, %d violations, %d errors, %.1fs",
        summary.bodies_tested,
        len(summary.violations),
        len(summary.errors),
        summary.runtime,
    )
    return 0 if summary.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
