#!/usr/bin/env python3
"""Desk-scale pseudoprime hunt: the headline zero-pseudoprime results.

Runs the three scans the test suite also relies on and prints their
summaries.  Everything is deterministic; CSVs land next to this script.
"""

import pathlib
import time

from quadfrob import PipelineConfig, free_a_scan, scan_range
from quadfrob.scan import MODE_PRESCREEN, write_free_a_csv, write_scan_csv

HERE = pathlib.Path(__file__).parent
FULL_SCAN_HI = 10_000_000
FREE_A_LIMIT = 1_000_000
PRESCREEN_HI = 1_000_000
WORKERS = 2


def main() -> None:
    t0 = time.time()
    s = scan_range(3, FULL_SCAN_HI, config=PipelineConfig(trial_division_bound=0), workers=WORKERS)
    print(f"[{time.time() - t0:6.1f}s] full pipeline, no trial division, odd n <= {FULL_SCAN_HI}:")
    print(f"    tested {s.tested}, probable primes {s.probable_primes}, "
          f"pseudoprimes {s.pseudoprimes}, false negatives {s.false_negatives}")

    t0 = time.time()
    p = scan_range(3, PRESCREEN_HI, mode=MODE_PRESCREEN, workers=WORKERS)
    write_scan_csv(p, HERE / "prescreen_survivors.csv")
    print(f"[{time.time() - t0:6.1f}s] prescreen reproduction, odd n <= {PRESCREEN_HI}:")
    print(f"    survivors {p.prescreen_survivors}, pseudoprimes {p.pseudoprimes} "
          f"-> prescreen_survivors.csv")

    t0 = time.time()
    f = free_a_scan(FREE_A_LIMIT, quarter_root=True, workers=WORKERS)
    write_free_a_csv(f, HERE / "free_a_pairs.csv")
    print(f"[{time.time() - t0:6.1f}s] free-ranging a below n**(1/4), odd composite n < {FREE_A_LIMIT}:")
    print(f"    composites {f.composites}, eligible pairs {f.eligible_pairs}, "
          f"pseudoprime pairs {len(f.pairs)} -> free_a_pairs.csv")


if __name__ == "__main__":
    main()
