"""Integer primitives: Jacobi symbol, square detection, modular power, sieve, oracle.

All functions are pure; the sieve outputs are built once by the caller and
can be shared read-only between threads or forked workers.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .counters import OpCounters
from .errors import FactorFound

# Deterministic strong-PRP witness set covering every n < 2**64
# (Sinclair's 7-base set; no composite below 2**64 passes all of them).
MR_WITNESSES_64 = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

ORACLE_LIMIT = 1 << 64

_SIEVE_MEMORY_LIMIT = 1 << 32


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 3; a may be negative."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"modulus must be odd and >= 3, got {n}")
    a %= n  # folds negative a in: (a mod n / n) = (a/n)
    result = 1
    while a != 0:
        while a & 1 == 0:
            a >>= 1
            r = n & 7
            if r == 3 or r == 5:
                result = -result
        a, n = n, a
        if a & 3 == 3 and n & 3 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def integer_sqrt(n: int) -> int:
    """floor(sqrt(n)) for n >= 0."""
    return math.isqrt(n)


def is_perfect_square(n: int) -> tuple[bool, int]:
    """(True, root) when n is a square, else (False, floor-root)."""
    r = math.isqrt(n)
    return r * r == n, r


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def mod_pow(base: int, exp: int, n: int, counters: OpCounters | None = None) -> int:
    """base**exp mod n by a left-to-right binary ladder.

    One modular squaring per loop iteration, one extra modular multiplication
    per set bit below the leading bit; both are tallied when counters given.
    """
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    if exp < 0:
        raise ValueError("negative exponent")
    if exp == 0:
        return 1 % n
    base %= n
    r = base
    if counters is None:
        for i in range(exp.bit_length() - 2, -1, -1):
            r = r * r % n
            if (exp >> i) & 1:
                r = r * base % n
    else:
        for i in range(exp.bit_length() - 2, -1, -1):
            r = r * r % n
            counters.full_modsquare += 1
            counters.loop_iterations += 1
            if (exp >> i) & 1:
                r = r * base % n
                counters.full_modmul += 1
    return r


def mod_inverse(a: int, n: int) -> int:
    """Inverse of a mod n via extended gcd; raises FactorFound when gcd > 1."""
    t, new_t = 0, 1
    r, new_r = n, a % n
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    if r != 1:
        raise FactorFound(n, r)
    return t % n


def sieve_bitmap(limit: int) -> np.ndarray:
    """Boolean primality table for 0..limit inclusive."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    if limit > _SIEVE_MEMORY_LIMIT:
        raise MemoryError(f"sieve limit {limit} exceeds the in-memory budget")
    is_p = np.ones(limit + 1, dtype=np.bool_)
    is_p[: min(2, limit + 1)] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return is_p


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, ascending."""
    if limit < 2:
        return []
    return [int(p) for p in np.flatnonzero(sieve_bitmap(limit))]


@lru_cache(maxsize=16)
def _cached_primes(limit: int) -> tuple[int, ...]:
    return tuple(sieve_primes(limit))


def oracle_is_prime(n: int) -> bool:
    """Exact primality for n < 2**64 via deterministic strong-PRP witnesses.

    Kept deliberately free of the quadratic-ring code paths so scans are
    checked against an independent method.
    """
    if n >= ORACLE_LIMIT:
        raise ValueError(f"oracle only covers n < 2**64, got {n}")
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for w in MR_WITNESSES_64:
        w %= n
        if w == 0:
            continue
        x = pow(w, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True
