"""Arithmetic in Z_n[x]/(x**2 - a*x + 1).

Elements are pairs (s, t) standing for s*x + t with both coordinates
canonical in [0, n).  Squaring uses the difference-of-squares form

    (s*x + t)**2 = s*(a*s + 2*t)*x + (t - s)*(t + s)

costing exactly two full-width modular multiplications; multiplying by a
fixed small base S*x + T costs only scalar-by-residue work.
"""

from __future__ import annotations

from typing import NamedTuple

from .counters import OpCounters

RING_POW_ORACLE_BOUND = 10_000


class RingElement(NamedTuple):
    s: int
    t: int


class TestParams(NamedTuple):
    """Ring parameter a and base coefficients S, T (base is S*x + T)."""

    a: int
    S: int
    T: int

    __test__ = False  # not a pytest class, despite the name

    @property
    def discriminant(self) -> int:
        return self.a * self.a - 4


def ring_square(e: RingElement, a: int, n: int, counters: OpCounters | None = None) -> RingElement:
    """Square a canonical element; two tracked full modular multiplications."""
    s, t = e
    s2 = s * (a * s + 2 * t) % n
    t2 = (t - s) * (t + s) % n
    if counters is not None:
        counters.full_modmul += 2
        counters.small_scalar_mul += 1
        counters.modadd += 3
    return RingElement(s2, t2)


def ring_mul_base(e: RingElement, p: TestParams, n: int, counters: OpCounters | None = None) -> RingElement:
    """Multiply a canonical element by the base S*x + T.

    For small a, S, T this is scalar-by-residue work only, tracked apart
    from the full multiplications of ring_square.
    """
    a, S, T = p
    s, t = e
    s2 = ((a * S + T) * s + S * t) % n
    t2 = (T * t - S * s) % n
    if counters is not None:
        counters.small_scalar_mul += 4
        counters.modadd += 2
    return RingElement(s2, t2)


def ring_pow(e: RingElement, k: int, a: int, n: int, counters: OpCounters | None = None) -> RingElement:
    """e**k by the left-to-right binary ladder (square always, multiply on 1-bits)."""
    if k < 0:
        raise ValueError("negative exponent")
    if k == 0:
        return RingElement(0, 1 % n)
    s, t = e
    base = RingElement(s % n, t % n)
    p = TestParams(a, base.s, base.t)
    acc = base
    for i in range(k.bit_length() - 2, -1, -1):
        acc = ring_square(acc, a, n, counters)
        if counters is not None:
            counters.loop_iterations += 1
        if (k >> i) & 1:
            acc = ring_mul_base(acc, p, n, counters)
    return acc


def ring_pow_linear_oracle(k: int, a: int, n: int) -> RingElement:
    """x**k by the O(k) recurrence x**k = a*x**(k-1) - x**(k-2).

    Independent check for the binary ladder; refuses k past the oracle bound.
    """
    if k < 0:
        raise ValueError("negative exponent")
    if k > RING_POW_ORACLE_BOUND:
        raise ValueError(f"oracle bound is {RING_POW_ORACLE_BOUND}, got k={k}")
    c_prev, d_prev = 0, 1 % n  # x**0
    if k == 0:
        return RingElement(c_prev, d_prev)
    c, d = 1 % n, 0  # x**1
    for _ in range(k - 1):
        c, c_prev = (a * c - c_prev) % n, c
        d, d_prev = (a * d - d_prev) % n, d
    return RingElement(c, d)
