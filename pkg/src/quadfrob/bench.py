"""Wall-clock and operation-count comparison of the test family.

The cost unit is the measured mean time of a base-2 Fermat test on operands
of the same size, so each "ratio" answers: how many Fermat tests does this
test cost?  The ring test with base x+2 should land between 2 and 2.5: it
spends two full modular multiplications per exponent bit where Fermat
spends one squaring.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .arith import gcd, jacobi
from .counters import OpCounters
from .frobenius import Verdict, candidate_a_sequence, fermat_prp, general_frobenius, lucas_chain, selfridge2
from .ring import TestParams

BENCH_KINDS = ("fermat", "lucas_chain", "selfridge2", "general")


@dataclass
class BenchReport:
    operand_bits: int
    reps: int
    seed: int
    mean_time: dict[str, float] = field(default_factory=dict)
    counter_totals: dict[str, OpCounters] = field(default_factory=dict)

    @property
    def selfridge_ratio(self) -> dict[str, float]:
        base = self.mean_time["fermat"]
        return {k: v / base for k, v in self.mean_time.items()}


def _random_operand(rng: random.Random, bits: int) -> int:
    return rng.getrandbits(bits - 1) | (1 << (bits - 1)) | 1


def _bench_a(n: int) -> int | None:
    """Smallest usable candidate a >= 3.

    a=0 and a=1 are excluded on purpose: with base x (the V-chain test) they
    make x a root of unity, so the chain runs on tiny periodic integers and
    times nothing.  From a=3 up all four tests exercise full-width residues.
    """
    seq = candidate_a_sequence()
    for _ in range(200):
        a = next(seq)
        if a < 3:
            continue
        if jacobi(a * a - 4, n) != -1:
            continue
        if gcd((a + 4) * (2 * a + 5), n) != 1:
            continue
        return a
    return None


def run_bench(bits: int, reps: int, seed: int) -> BenchReport:
    """Time all four tests on `reps` seeded random odd operands of `bits` bits."""
    if bits < 64:
        raise ValueError("operand size below 64 bits times mostly interpreter noise")
    if reps < 1:
        raise ValueError("reps must be >= 1")
    rng = random.Random(seed)
    report = BenchReport(operand_bits=bits, reps=reps, seed=seed)
    totals = {k: OpCounters() for k in BENCH_KINDS}
    times = {k: 0.0 for k in BENCH_KINDS}
    done = 0
    while done < reps:
        n = _random_operand(rng, bits)
        a = _bench_a(n)
        if a is None:  # square or similarly degenerate operand; draw again
            continue

        def timed(kind: str, fn) -> Verdict:
            t0 = time.perf_counter()
            v = fn()
            times[kind] += time.perf_counter() - t0
            totals[kind].merge(v.counters)
            return v

        timed("fermat", lambda: fermat_prp(n, 2))
        timed("lucas_chain", lambda: lucas_chain(n, a))
        timed("selfridge2", lambda: selfridge2(n, a))
        timed("general", lambda: general_frobenius(n, TestParams(a, 1, 2)))
        done += 1
    report.mean_time = {k: times[k] / reps for k in BENCH_KINDS}
    report.counter_totals = totals
    return report
