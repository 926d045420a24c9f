"""Shared independent oracles for the test suite.

These deliberately avoid the package's optimized recurrences: products are
expanded as plain polynomials and reduced with x**2 = a*x - 1, so agreement
with the library is evidence, not tautology.
"""

from __future__ import annotations

import pytest


def ring_mul_generic(e1: tuple[int, int], e2: tuple[int, int], a: int, n: int) -> tuple[int, int]:
    """Product of s1*x + t1 and s2*x + t2 via full polynomial expansion."""
    s1, t1 = e1
    s2, t2 = e2
    x2 = s1 * s2  # coefficient of x**2
    x1 = s1 * t2 + t1 * s2
    x0 = t1 * t2
    return (x1 + a * x2) % n, (x0 - x2) % n


def ring_pow_bruteforce(base: tuple[int, int], k: int, a: int, n: int) -> tuple[int, int]:
    """base**k by k-1 successive generic multiplications."""
    acc = (0, 1 % n)
    for _ in range(k):
        acc = ring_mul_generic(acc, base, a, n)
    return acc


def legendre_bruteforce(a: int, p: int) -> int:
    """Legendre symbol by enumerating nonzero squares mod an odd prime p."""
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


def trial_division_is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@pytest.fixture(scope="session")
def small_sieve():
    from quadfrob import sieve_bitmap

    return sieve_bitmap(1_000_000)
