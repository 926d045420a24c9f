#!/usr/bin/env python3
"""Selfridge cost table across operand sizes.

One selfridge = the measured time of a base-2 Fermat test at the same size.
Expected shape: the V-chain near 2, the ring tests between 2 and 2.5 (each
trades the Fermat squaring for two full multiplications per exponent bit).
"""

from quadfrob.bench import BENCH_KINDS, run_bench

SIZES = (512, 1024, 2048, 4096)
REPS = 5
SEED = 20240809


def main() -> None:
    print(f"{'bits':>6} | " + " | ".join(f"{k:>12}" for k in BENCH_KINDS))
    print("-" * (9 + 15 * len(BENCH_KINDS)))
    for bits in SIZES:
        report = run_bench(bits=bits, reps=REPS, seed=SEED)
        ratios = report.selfridge_ratio
        print(f"{bits:>6} | " + " | ".join(f"{ratios[k]:>12.3f}" for k in BENCH_KINDS))
    print()
    print(f"(selfridges; {REPS} reps per size, seed {SEED})")


if __name__ == "__main__":
    main()
