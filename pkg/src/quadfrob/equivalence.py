"""Alternative formulations of the quadratic ring test, used as cross-checks.

The base S*x + T with ring parameter a transforms to a degree-2 recurrence
with trace P = a*S + 2*T and norm Q = S**2 + a*S*T + T**2.  Three derived
tests follow:

  * companion-matrix form: A**(n+1) == Q*I for A = [[P, -Q], [1, 0]],
    equivalent to the ring test;
  * Euler criterion on the norm: Q**((n-1)/2) == (Q/n);
  * a halved-exponent V-chain in z**2 - c*z + 1 with c = P**2/Q - 2,
    checking z**((n+1)/2) == (Q/n).

The ring test implies the latter two but neither converse holds; the pair
(21, a=6, S=10, T=4) passes Euler only and (27, a=6, S=1, T=7) passes the
z-chain only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .arith import gcd, jacobi, mod_inverse, mod_pow
from .counters import OpCounters
from .errors import ParameterError
from .frobenius import general_frobenius
from .ring import TestParams


class EquivParams(NamedTuple):
    p: int
    q: int


class Matrix2(NamedTuple):
    """2x2 matrix mod n, row-major."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def companion(cls, p: int, q: int, n: int) -> "Matrix2":
        return cls(p % n, -q % n, 1 % n, 0)


def compute_pq(a: int, S: int, T: int, n: int) -> EquivParams:
    """Trace and norm of the base S*x + T, reduced mod n."""
    return EquivParams((a * S + 2 * T) % n, (S * S + a * S * T + T * T) % n)


def _mat_mul(x: Matrix2, y: Matrix2, n: int, counters: OpCounters | None = None) -> Matrix2:
    if counters is not None:
        counters.full_modmul += 8
        counters.modadd += 4
    return Matrix2(
        (x.a * y.a + x.b * y.c) % n,
        (x.a * y.b + x.b * y.d) % n,
        (x.c * y.a + x.d * y.c) % n,
        (x.c * y.b + x.d * y.d) % n,
    )


def mat_pow(m: Matrix2, k: int, n: int, counters: OpCounters | None = None) -> Matrix2:
    """m**k by the same left-to-right ladder the ring tests use."""
    if k < 0:
        raise ValueError("negative exponent")
    ident = Matrix2(1 % n, 0, 0, 1 % n)
    if k == 0:
        return ident
    acc = m
    for i in range(k.bit_length() - 2, -1, -1):
        acc = _mat_mul(acc, acc, n, counters)
        if counters is not None:
            counters.loop_iterations += 1
        if (k >> i) & 1:
            acc = _mat_mul(acc, m, n, counters)
    return acc


def matrix_pow_test(n: int, ep: EquivParams) -> bool:
    """A**(n+1) == Q*I for the companion matrix of z**2 - P*z + Q."""
    if n < 3 or n % 2 == 0:
        raise ParameterError(f"modulus must be odd and >= 3, got {n}")
    p, q = ep.p % n, ep.q % n
    if gcd(p * q, n) != 1:
        raise ParameterError(f"gcd(P*Q, n) must be 1, got P={p}, Q={q}, n={n}")
    m = mat_pow(Matrix2.companion(p, q, n), n + 1, n)
    return m == Matrix2(q, 0, 0, q)


def euler_qprp(n: int, q: int) -> bool:
    """Euler criterion: Q**((n-1)/2) == (Q/n) mod n."""
    if n < 3 or n % 2 == 0:
        raise ParameterError(f"modulus must be odd and >= 3, got {n}")
    j = jacobi(q, n)
    if j == 0:
        raise ParameterError(f"Q={q} shares a factor with n={n}")
    return mod_pow(q, (n - 1) // 2, n) == j % n


def z_lucas_test(n: int, ep: EquivParams) -> bool:
    """Halved-exponent V-chain: z**((n+1)/2) == (Q/n) in z**2 - c*z + 1.

    With c = P**2 * Q**(-1) - 2 and eps = (Q/n), the scalar congruence is
    equivalent to the pair condition (V_m, V_{m+1}) == (2*eps, c*eps) for
    m = (n+1)/2, which is what the chain checks.  A non-invertible Q raises
    FactorFound carrying the divisor.
    """
    if n < 3 or n % 2 == 0:
        raise ParameterError(f"modulus must be odd and >= 3, got {n}")
    p, q = ep.p % n, ep.q % n
    c = (p * p * mod_inverse(q, n) - 2) % n
    eps = jacobi(q, n)  # nonzero: mod_inverse succeeded
    m = (n + 1) // 2
    va, vb = 2 % n, c
    for i in range(m.bit_length() - 1, -1, -1):
        if (m >> i) & 1:
            va, vb = (va * vb - c) % n, (vb * vb - 2) % n
        else:
            vb, va = (va * vb - c) % n, (va * va - 2) % n
    return va == (2 * eps) % n and vb == (c * eps) % n


@dataclass
class CrossCheckReport:
    """Results of all four formulations on one parameter set."""

    n: int
    params: TestParams
    equiv: EquivParams
    general: bool
    matrix: bool
    euler: bool
    z_lucas: bool
    violations: list[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.violations


def cross_validate(n: int, a: int, S: int, T: int) -> CrossCheckReport:
    """Run the ring test and its three reformulations; flag breaches.

    Required relations: ring == matrix, and ring passing forces both the
    Euler norm test and the z-chain to pass.  S must be invertible mod n:
    the change of base y = S*x + T is an isomorphism only then (the
    companion discriminant is (a**2-4)*S**2), and with S degenerate the
    matrix form stops mirroring the ring test even for primes.
    """
    if gcd(S, n) != 1:
        raise ParameterError(f"S={S} must be invertible mod n={n} for the equivalences")
    params = TestParams(a, S, T)
    ep = compute_pq(a, S, T, n)
    general = general_frobenius(n, params).probable_prime
    matrix = matrix_pow_test(n, ep)
    euler = euler_qprp(n, ep.q)
    z = z_lucas_test(n, ep)
    violations = []
    if general != matrix:
        violations.append(f"ring test ({general}) != matrix test ({matrix})")
    if general and not (euler and z):
        violations.append(f"ring test passed but euler={euler}, z_chain={z}")
    return CrossCheckReport(n, params, ep, general, matrix, euler, z, violations)
