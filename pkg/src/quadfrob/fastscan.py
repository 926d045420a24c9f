"""Fixed-width (int64) kernels for throughput-bound range scans.

Mirrors the arbitrary-precision implementations exactly; the test suite
holds the two paths to identical verdicts.  Valid only while every product
fits in a signed 64-bit word, i.e. n <= FAST_N_MAX; larger operands take
the pure-Python path.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

# largest n with (n-1)**2 < 2**63
FAST_N_MAX = 3_037_000_499

# candidate budget handed to kernels; the observed maximum need is a=81,
# the 67th candidate, so running off this table is a fallback event
KERNEL_CANDIDATES = 256

TAG_FOUND = 0
TAG_JACOBI_ZERO = 1
TAG_GCD_SCREEN = 2
TAG_SQUARE = 3
TAG_EXHAUSTED = 4


@njit(cache=True)
def jacobi64(a: int, n: int) -> int:
    a %= n
    if a < 0:
        a += n
    result = 1
    while a != 0:
        while a & 1 == 0:
            a >>= 1
            r = n & 7
            if r == 3 or r == 5:
                result = -result
        a, n = n, a
        if (a & 3) == 3 and (n & 3) == 3:
            result = -result
        a %= n
    if n == 1:
        return result
    return 0


@njit(cache=True)
def gcd64(a: int, b: int) -> int:
    while b != 0:
        a, b = b, a % b
    return a


@njit(cache=True)
def isqrt64(n: int) -> int:
    if n < 2:
        return n
    x = int(math.sqrt(n))
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x


@njit(cache=True)
def mod_pow64(base: int, exp: int, n: int) -> int:
    base %= n
    if exp == 0:
        return 1 % n
    r = base
    i = 62
    while (exp >> i) & 1 == 0 and i > 0:
        i -= 1
    i -= 1
    while i >= 0:
        r = r * r % n
        if (exp >> i) & 1:
            r = r * base % n
        i -= 1
    return r


@njit(cache=True)
def fermat64(n: int, base: int) -> bool:
    return mod_pow64(base, n - 1, n) == 1


@njit(cache=True)
def mr_is_prime64(n: int) -> bool:
    """Strong-PRP oracle, same witness set as the pure path; n <= FAST_N_MAX."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d & 1 == 0:
        d >>= 1
        s += 1
    for w0 in (2, 325, 9375, 28178, 450775, 9780504, 1795265022):
        w = w0 % n
        if w == 0:
            continue
        x = mod_pow64(w, d, n)
        if x == 1 or x == n - 1:
            continue
        composite = True
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                composite = False
                break
        if composite:
            return False
    return True


@njit(cache=True)
def selfridge2_64(n: int, a: int) -> bool:
    m = n + 1
    bl = 63
    while (m >> bl) & 1 == 0:
        bl -= 1
    ap2 = a + 2
    s = 1 % n
    t = 2 % n
    i = bl - 1
    while i >= 0:
        # inner reductions keep every product below 2**63
        u = s * ((a * s + 2 * t) % n) % n
        v = (t - s) * ((t + s) % n) % n
        s = u
        t = v if v >= 0 else v + n
        if (m >> i) & 1:
            u = (ap2 * s + t) % n
            v = (2 * t - s) % n
            s = u
            t = v if v >= 0 else v + n
        i -= 1
    return s == 0 and t == (2 * a + 5) % n


@njit(cache=True)
def general11_64(n: int, a: int) -> bool:
    # S=1, T=1 base used by hybrid mode for a >= 3
    m = n + 1
    bl = 63
    while (m >> bl) & 1 == 0:
        bl -= 1
    ap1 = a + 1
    s = 1 % n
    t = 1 % n
    i = bl - 1
    while i >= 0:
        u = s * ((a * s + 2 * t) % n) % n
        v = (t - s) * ((t + s) % n) % n
        s = u
        t = v if v >= 0 else v + n
        if (m >> i) & 1:
            u = (ap1 * s + t) % n
            v = (t - s) % n
            s = u
            t = v if v >= 0 else v + n
        i -= 1
    return s == 0 and t == (a + 2) % n


@njit(cache=True)
def find_min_a_64(n: int, cands: np.ndarray) -> tuple[int, int]:
    """(tag, value): value is a when found/screened, the root for TAG_SQUARE."""
    r = isqrt64(n)
    if r * r == n:
        return TAG_SQUARE, r
    for idx in range(cands.shape[0]):
        a = cands[idx]
        d = a * a - 4
        j = jacobi64(d, n)
        if j == 0:
            dd = d if d >= 0 else -d
            g = gcd64(dd, n)
            if 1 < g < n:
                return TAG_JACOBI_ZERO, a
            continue
        if j == -1:
            g = gcd64((a + 4) * (2 * a + 5), n)
            if g == 1:
                return TAG_FOUND, a
            if g < n:
                return TAG_GCD_SCREEN, a
            continue
    return TAG_EXHAUSTED, -1


@njit(cache=True)
def pipeline64(
    n: int,
    cands: np.ndarray,
    td_primes: np.ndarray,
    prescreen: bool,
    hybrid: bool,
) -> int:
    """Verdict of the full pipeline: 1 probable prime, 0 composite, -1 fallback."""
    if n < 2:
        return 0
    if n == 2:
        return 1
    if n % 2 == 0:
        return 0
    for idx in range(td_primes.shape[0]):
        p = td_primes[idx]
        if p == 2:
            continue
        if p * p > n:
            return 1
        if n % p == 0:
            if n == p:
                return 1
            return 0
    r = isqrt64(n)
    if r * r == n:
        return 0
    tag, a = find_min_a_64(n, cands)
    if tag == TAG_EXHAUSTED:
        return -1
    if tag != TAG_FOUND:
        return 0
    if prescreen and not fermat64(n, (2 * a + 5) % n):
        return 0
    if hybrid and a >= 3:
        g = gcd64(a + 2, n)
        if 1 < g < n:
            return 0
        if g == 1:
            return 1 if general11_64(n, a) else 0
    return 1 if selfridge2_64(n, a) else 0


@njit(cache=True)
def scan_block64(
    lo: int,
    hi: int,
    cands: np.ndarray,
    td_primes: np.ndarray,
    prescreen: bool,
    hybrid: bool,
    sieve: np.ndarray,
    use_sieve: bool,
) -> tuple[int, int, int, np.ndarray, np.ndarray]:
    """Full-pipeline scan of odd n in [lo, hi].

    Returns (tested, prp_count, composite_count, disagreements, fallbacks);
    disagreements carries every n whose verdict contradicts the oracle,
    fallbacks every n the kernel could not decide.
    """
    cap = (hi - lo) // 2 + 2
    bad = np.empty(cap, dtype=np.int64)
    fallback = np.empty(cap, dtype=np.int64)
    nbad = 0
    nfall = 0
    tested = 0
    prp = 0
    comp = 0
    n = lo if lo & 1 else lo + 1
    while n <= hi:
        tested += 1
        v = pipeline64(n, cands, td_primes, prescreen, hybrid)
        if v < 0:
            fallback[nfall] = n
            nfall += 1
        else:
            oracle = sieve[n] if use_sieve else mr_is_prime64(n)
            if v == 1:
                prp += 1
                if not oracle:
                    bad[nbad] = n
                    nbad += 1
            else:
                comp += 1
                if oracle:
                    bad[nbad] = n
                    nbad += 1
        n += 2
    return tested, prp, comp, bad[:nbad].copy(), fallback[:nfall].copy()


@njit(cache=True)
def prescreen_block64(
    lo: int,
    hi: int,
    cands: np.ndarray,
    sieve: np.ndarray,
    use_sieve: bool,
) -> tuple[int, int, int, int, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Fermat-prescreen reproduction over odd n in [lo, hi]: no trial division,
    minimal-a search, base 2a+5 Fermat, full test only on prescreen passers.

    Returns (tested, prp, composite, survivors, surv_n, surv_a, disagreements,
    fallbacks); survivors are oracle-composites that passed the prescreen.
    """
    cap = (hi - lo) // 2 + 2
    surv_n = np.empty(cap, dtype=np.int64)
    surv_a = np.empty(cap, dtype=np.int64)
    bad = np.empty(cap, dtype=np.int64)
    fallback = np.empty(cap, dtype=np.int64)
    nsurv = 0
    nbad = 0
    nfall = 0
    tested = 0
    prp = 0
    comp = 0
    n = lo if lo & 1 else lo + 1
    while n <= hi:
        tested += 1
        oracle = sieve[n] if use_sieve else mr_is_prime64(n)
        tag, a = find_min_a_64(n, cands)
        if tag == TAG_EXHAUSTED:
            fallback[nfall] = n
            nfall += 1
            n += 2
            continue
        verdict = False
        if tag == TAG_FOUND:
            if fermat64(n, (2 * a + 5) % n):
                if not oracle:
                    surv_n[nsurv] = n
                    surv_a[nsurv] = a
                    nsurv += 1
                verdict = selfridge2_64(n, a)
        if verdict:
            prp += 1
            if not oracle:
                bad[nbad] = n
                nbad += 1
        else:
            comp += 1
            if oracle:
                bad[nbad] = n
                nbad += 1
        n += 2
    return tested, prp, comp, nsurv, surv_n[:nsurv].copy(), surv_a[:nsurv].copy(), bad[:nbad].copy(), fallback[:nfall].copy()


@njit(cache=True)
def free_a_block64(
    lo: int,
    hi: int,
    quarter_root: bool,
    a_bound: int,
    sieve: np.ndarray,
    use_sieve: bool,
) -> tuple[int, int, np.ndarray, np.ndarray, bool]:
    """Free-ranging-a pseudoprime search over odd composite n in [lo, hi].

    Every a under the policy is tried, not just the minimal-search order:
    distinct a give distinct tests even when their discriminants share a
    kernel.  Returns (composites, eligible_pairs, hit_n, hit_a, overflowed);
    an overflowed block must be redone by the unbounded pure path so that
    no pseudoprime pair is ever dropped.
    """
    cap = 65536
    hit_n = np.empty(cap, dtype=np.int64)
    hit_a = np.empty(cap, dtype=np.int64)
    nhit = 0
    overflow = False
    composites = 0
    eligible = 0
    n = lo if lo & 1 else lo + 1
    while n <= hi:
        is_prime = sieve[n] if use_sieve else mr_is_prime64(n)
        if not is_prime and n > 1:
            composites += 1
            if quarter_root:
                b = isqrt64(isqrt64(n))
                while b > 0 and b * b * b * b >= n:
                    b -= 1
                amax = b
            else:
                amax = a_bound - 1
            for a in range(0, amax + 1):
                d = a * a - 4
                if jacobi64(d, n) != -1:
                    continue
                if gcd64((a + 4) * (2 * a + 5), n) != 1:
                    continue
                eligible += 1
                if selfridge2_64(n, a):
                    if nhit < cap:
                        hit_n[nhit] = n
                        hit_a[nhit] = a
                        nhit += 1
                    else:
                        overflow = True
        n += 2
    return composites, eligible, hit_n[:nhit].copy(), hit_a[:nhit].copy(), overflow
