"""Range scans against an independent oracle, and the free-ranging-a search.

Work is sharded into contiguous blocks of 2**16 odd candidates.  Blocks are
independent (pure functions over their sub-range), so any worker count gives
the same result; the merger consumes blocks in range order, which keeps
output and CSV bytes identical no matter how the work was distributed.

For n within the fixed-width domain the numba kernels do the heavy loop;
everything emitted as a record is re-derived by the instrumented pure path
so records carry full counters either way.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass, field

import numpy as np

from . import fastscan
from .arith import jacobi, oracle_is_prime, sieve_bitmap, sieve_primes
from .counters import OpCounters, merged
from .errors import SearchExhausted
from .frobenius import (
    FOUND_A,
    SEARCH_EXHAUSTED,
    PipelineConfig,
    TestReport,
    fermat_prp,
    find_min_a,
    is_probable_prime,
    selfridge2,
    candidate_prefix,
)

BLOCK_ODD = 1 << 16  # odd candidates per work unit
BLOCK_SPAN = BLOCK_ODD * 2
SIEVE_ORACLE_LIMIT = 100_000_000

MODE_FULL = "full-pipeline"
MODE_PRESCREEN = "prescreen-repro"

SCAN_CSV_HEADER = "n,a,verdict,oracle,prescreen,full_modmul,full_modsquare,small_scalar_mul,modadd,loop_iterations"
FREE_A_CSV_HEADER = "n,a,ln_a"


@dataclass
class ScanRecord:
    n: int
    a: str  # decimal a, or the stage tag that settled the verdict
    verdict: str
    oracle: bool
    prescreen: bool | None
    counters: OpCounters

    def csv_row(self) -> str:
        pre = "" if self.prescreen is None else str(self.prescreen).lower()
        c = self.counters
        return (
            f"{self.n},{self.a},{self.verdict},{str(self.oracle).lower()},{pre},"
            f"{c.full_modmul},{c.full_modsquare},{c.small_scalar_mul},{c.modadd},{c.loop_iterations}"
        )


@dataclass
class ScanSummary:
    lo: int
    hi: int
    mode: str
    tested: int = 0
    probable_primes: int = 0
    composites: int = 0
    prescreen_survivors: int | None = None
    pseudoprimes: int = 0
    false_negatives: int = 0
    records: list[ScanRecord] = field(default_factory=list)

    @property
    def counter_totals(self) -> OpCounters:
        return merged([r.counters for r in self.records])

    @property
    def clean(self) -> bool:
        return self.pseudoprimes == 0 and self.false_negatives == 0


@dataclass
class FreeAPair:
    n: int
    a: int

    def csv_row(self) -> str:
        ln = f"{math.log(self.a):.12f}" if self.a > 0 else ""
        return f"{self.n},{self.a},{ln}"


@dataclass
class FreeASummary:
    n_limit: int
    policy: str
    composites: int = 0
    eligible_pairs: int = 0
    pairs: list[FreeAPair] = field(default_factory=list)


# oracle table shared with forked workers; built once before the pool starts
_ORACLE_SIEVE: np.ndarray | None = None
_EMPTY_SIEVE = np.zeros(1, dtype=np.bool_)


def _oracle(n: int) -> bool:
    if _ORACLE_SIEVE is not None and n < _ORACLE_SIEVE.shape[0]:
        return bool(_ORACLE_SIEVE[n])
    return oracle_is_prime(n)


def _blocks(lo: int, hi: int) -> list[tuple[int, int]]:
    out = []
    start = lo
    while start <= hi:
        end = min(start + BLOCK_SPAN - 1, hi)
        out.append((start, end))
        start = end + 1
    return out


def _iter_odd(lo: int, hi: int):
    n = lo if lo & 1 else lo + 1
    return range(n, hi + 1, 2)


# --- pure-python block workers (arbitrary precision; reference semantics) ---


def _scan_block_pure(args) -> tuple[int, int, int, list[int], list[int]]:
    lo, hi, cfg = args
    tested = prp = comp = 0
    bad: list[int] = []
    for n in _iter_odd(lo, hi):
        tested += 1
        verdict = is_probable_prime(n, cfg).verdict.probable_prime
        oracle = _oracle(n)
        if verdict:
            prp += 1
            if not oracle:
                bad.append(n)
        else:
            comp += 1
            if oracle:
                bad.append(n)
    return tested, prp, comp, bad, []


def _prescreen_block_pure(args) -> tuple[int, int, int, int, list[int], list[int], list[int], list[int]]:
    lo, hi, search_bound = args
    tested = prp = comp = 0
    surv_n: list[int] = []
    surv_a: list[int] = []
    bad: list[int] = []
    for n in _iter_odd(lo, hi):
        tested += 1
        oracle = _oracle(n)
        verdict = False
        if n >= 3:
            param = find_min_a(n, search_bound)
            if param.kind == SEARCH_EXHAUSTED:
                raise SearchExhausted(n, search_bound)
            if param.kind == FOUND_A:
                a = param.a
                if fermat_prp(n, 2 * a + 5).probable_prime:
                    if not oracle:
                        surv_n.append(n)
                        surv_a.append(a)
                    verdict = selfridge2(n, a).probable_prime
        if verdict:
            prp += 1
            if not oracle:
                bad.append(n)
        else:
            comp += 1
            if oracle:
                bad.append(n)
    return tested, prp, comp, len(surv_n), surv_n, surv_a, bad, []


def _free_a_block_pure(args) -> tuple[int, int, list[int], list[int], bool]:
    lo, hi, quarter_root, a_bound = args
    composites = eligible = 0
    hit_n: list[int] = []
    hit_a: list[int] = []
    for n in _iter_odd(lo, hi):
        if n <= 1 or _oracle(n):
            continue
        composites += 1
        if quarter_root:
            b = math.isqrt(math.isqrt(n))
            while b > 0 and b**4 >= n:
                b -= 1
            amax = b
        else:
            amax = a_bound - 1
        for a in range(amax + 1):
            d = a * a - 4
            if jacobi(d, n) != -1:
                continue
            if math.gcd((a + 4) * (2 * a + 5), n) != 1:
                continue
            eligible += 1
            if selfridge2(n, a).probable_prime:
                hit_n.append(n)
                hit_a.append(a)
    return composites, eligible, hit_n, hit_a, False


# --- fast-path block workers ---

_KERNEL_CANDS: np.ndarray | None = None


def _kernel_cands(search_bound: int) -> np.ndarray:
    # capped at the kernel budget; running off the short table is a
    # fallback event and the pure path re-decides with the full bound
    global _KERNEL_CANDS
    if _KERNEL_CANDS is None:
        _KERNEL_CANDS = np.array(candidate_prefix(fastscan.KERNEL_CANDIDATES), dtype=np.int64)
    return _KERNEL_CANDS[: min(fastscan.KERNEL_CANDIDATES, search_bound)]


def _scan_block_fast(args):
    lo, hi, td_primes, prescreen, hybrid, search_bound = args
    sieve = _ORACLE_SIEVE if _ORACLE_SIEVE is not None else _EMPTY_SIEVE
    use_sieve = _ORACLE_SIEVE is not None and hi < _ORACLE_SIEVE.shape[0]
    tested, prp, comp, bad, fall = fastscan.scan_block64(
        lo, hi, _kernel_cands(search_bound), td_primes, prescreen, hybrid, sieve, use_sieve
    )
    return tested, prp, comp, [int(x) for x in bad], [int(x) for x in fall]


def _prescreen_block_fast(args):
    lo, hi, search_bound = args
    sieve = _ORACLE_SIEVE if _ORACLE_SIEVE is not None else _EMPTY_SIEVE
    use_sieve = _ORACLE_SIEVE is not None and hi < _ORACLE_SIEVE.shape[0]
    tested, prp, comp, nsurv, sn, sa, bad, fall = fastscan.prescreen_block64(
        lo, hi, _kernel_cands(search_bound), sieve, use_sieve
    )
    return (
        tested,
        prp,
        comp,
        nsurv,
        [int(x) for x in sn],
        [int(x) for x in sa],
        [int(x) for x in bad],
        [int(x) for x in fall],
    )


def _free_a_block_fast(args):
    lo, hi, quarter_root, a_bound = args
    sieve = _ORACLE_SIEVE if _ORACLE_SIEVE is not None else _EMPTY_SIEVE
    use_sieve = _ORACLE_SIEVE is not None and hi < _ORACLE_SIEVE.shape[0]
    comp, elig, hn, ha, overflow = fastscan.free_a_block64(
        lo, hi, quarter_root, 0 if a_bound is None else a_bound, sieve, use_sieve
    )
    if overflow:
        return _free_a_block_pure((lo, hi, quarter_root, a_bound))
    return comp, elig, [int(x) for x in hn], [int(x) for x in ha], False


def _run_blocks(fn, tasks: list, workers: int) -> list:
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(workers) as pool:
        return pool.map(fn, tasks, chunksize=1)


def _prepare_oracle(hi: int) -> None:
    global _ORACLE_SIEVE
    if hi <= SIEVE_ORACLE_LIMIT:
        if _ORACLE_SIEVE is None or _ORACLE_SIEVE.shape[0] <= hi:
            _ORACLE_SIEVE = sieve_bitmap(hi)
    # beyond the sieve budget the deterministic witness oracle takes over


def _use_fast(hi: int, use_fast: bool | None) -> bool:
    if use_fast is False:
        return False
    return hi <= fastscan.FAST_N_MAX


def scan_range(
    lo: int,
    hi: int,
    mode: str = MODE_FULL,
    config: PipelineConfig | None = None,
    workers: int = 1,
    use_fast: bool | None = None,
) -> ScanSummary:
    """Test every odd n in [lo, hi] and compare against the oracle.

    full-pipeline mode runs is_probable_prime with the given config and
    records every disagreement with the oracle (expected: none).
    prescreen-repro mode skips trial division, Fermat-prescreens with base
    2a+5, runs the ring test only on prescreen passers, and records every
    composite that survived the prescreen.
    """
    if lo > hi:
        raise ValueError(f"empty range: lo={lo} > hi={hi}")
    if hi >= 1 << 64:
        raise ValueError("oracle only covers n < 2**64")
    if mode not in (MODE_FULL, MODE_PRESCREEN):
        raise ValueError(f"unknown mode {mode!r}")
    cfg = config or PipelineConfig()
    _prepare_oracle(hi)
    fast = _use_fast(hi, use_fast)
    summary = ScanSummary(lo=lo, hi=hi, mode=mode)

    if mode == MODE_FULL:
        if fast:
            td = np.array(sieve_primes(max(cfg.trial_division_bound, 0)), dtype=np.int64)
            tasks = [
                (b_lo, b_hi, td, cfg.fermat_prescreen, cfg.hybrid, cfg.search_bound)
                for b_lo, b_hi in _blocks(lo, hi)
            ]
            results = _run_blocks(_scan_block_fast, tasks, workers)
        else:
            tasks = [(b_lo, b_hi, cfg) for b_lo, b_hi in _blocks(lo, hi)]
            results = _run_blocks(_scan_block_pure, tasks, workers)
        if cfg.fermat_prescreen:
            summary.prescreen_survivors = 0
        for tested, prp, comp, bad, fall in results:
            summary.tested += tested
            summary.probable_primes += prp
            summary.composites += comp
            for n in fall:
                # kernel could not settle this n; the pure pipeline decides
                report = is_probable_prime(n, cfg)
                oracle = _oracle(n)
                if report.verdict.probable_prime:
                    summary.probable_primes += 1
                else:
                    summary.composites += 1
                if report.verdict.probable_prime != oracle:
                    bad.append(n)
            for n in sorted(bad):
                summary.records.append(_full_record(n, cfg))
    else:
        if fast:
            tasks_f = [(b_lo, b_hi, cfg.search_bound) for b_lo, b_hi in _blocks(lo, hi)]
            results = _run_blocks(_prescreen_block_fast, tasks_f, workers)
        else:
            tasks_p = [(b_lo, b_hi, cfg.search_bound) for b_lo, b_hi in _blocks(lo, hi)]
            results = _run_blocks(_prescreen_block_pure, tasks_p, workers)
        summary.prescreen_survivors = 0
        for tested, prp, comp, nsurv, sn, sa, bad, fall in results:
            for n in fall:
                # kernel ran off its candidate table; the unbounded-walk pure
                # path decides this n (raises only past cfg.search_bound)
                _, p1, c1, ns1, sn1, sa1, bad1, _ = _prescreen_block_pure((n, n, cfg.search_bound))
                prp += p1
                comp += c1
                nsurv += ns1
                sn = list(sn) + sn1
                sa = list(sa) + sa1
                bad = sorted(list(bad) + bad1)
            summary.tested += tested
            summary.probable_primes += prp
            summary.composites += comp
            summary.prescreen_survivors += nsurv
            for n, a in sorted(zip(sn, sa)):
                summary.records.append(_survivor_record(n, a))
            for n in bad:
                if not any(r.n == n for r in summary.records):
                    summary.records.append(_full_record(n, cfg))

    for r in summary.records:
        if r.verdict == "probable-prime" and not r.oracle:
            summary.pseudoprimes += 1
        if r.verdict == "composite" and r.oracle:
            summary.false_negatives += 1
    return summary


def _full_record(n: int, cfg: PipelineConfig) -> ScanRecord:
    report: TestReport = is_probable_prime(n, cfg)
    if report.a is not None:
        a_str = str(report.a)
    elif report.verdict.reason is not None:
        a_str = report.verdict.reason
    else:
        a_str = report.stage
    pre = report.prescreen_passed
    return ScanRecord(n, a_str, report.verdict.outcome, _oracle(n), pre, report.counters)


def _survivor_record(n: int, a: int) -> ScanRecord:
    pre = fermat_prp(n, 2 * a + 5)
    final = selfridge2(n, a)
    counters = pre.counters + final.counters
    return ScanRecord(n, str(a), final.outcome, _oracle(n), True, counters)


def free_a_scan(
    n_limit: int,
    quarter_root: bool = True,
    a_bound: int | None = None,
    workers: int = 1,
    use_fast: bool | None = None,
    budget_limit: int = 10_000_000,
) -> FreeASummary:
    """Search odd composites below n_limit for ring-test pseudoprime pairs.

    Policy: a < n**(1/4) (quarter_root) or a < a_bound.  Pairs that pass are
    data, not failures; the quarter-root region is expected to stay empty.
    """
    if n_limit > budget_limit:
        raise ValueError(f"n_limit {n_limit} exceeds the scan budget {budget_limit}")
    if not quarter_root and (a_bound is None or a_bound < 1):
        raise ValueError("a_bound must be >= 1 when the quarter-root policy is off")
    policy = "quarter-root" if quarter_root else f"a<{a_bound}"
    summary = FreeASummary(n_limit=n_limit, policy=policy)
    if n_limit <= 3:
        return summary
    hi = n_limit - 1
    _prepare_oracle(hi)
    fast = _use_fast(hi, use_fast)
    tasks = [(b_lo, b_hi, quarter_root, a_bound) for b_lo, b_hi in _blocks(3, hi)]
    fn = _free_a_block_fast if fast else _free_a_block_pure
    for comp, elig, hn, ha, _ in _run_blocks(fn, tasks, workers):
        summary.composites += comp
        summary.eligible_pairs += elig
        for n, a in zip(hn, ha):
            summary.pairs.append(FreeAPair(n, a))
    return summary


def write_scan_csv(summary: ScanSummary, path: str) -> None:
    with open(path, "w", newline="") as f:
        f.write(SCAN_CSV_HEADER + "\n")
        for r in summary.records:
            f.write(r.csv_row() + "\n")


def write_free_a_csv(summary: FreeASummary, path: str) -> None:
    with open(path, "w", newline="") as f:
        f.write(FREE_A_CSV_HEADER + "\n")
        for p in summary.pairs:
            f.write(p.csv_row() + "\n")
