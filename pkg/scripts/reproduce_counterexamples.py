#!/usr/bin/env python3
"""Show the two parameter sets that split the Euler and z-chain tests.

Both are composite and fail the ring test, but 21 passes the Euler norm
check while failing the halved-exponent chain, and 27 does the opposite:
neither derived test alone implies the other or the ring test.
"""

from quadfrob import compute_pq, cross_validate

CASES = [
    (21, 6, 10, 4),
    (27, 6, 1, 7),
]


def show(n, a, S, T):
    ep = compute_pq(a, S, T, n)
    rep = cross_validate(n, a, S, T)
    print(f"n={n}  a={a}  S={S}  T={T}  ->  P={ep.p}  Q={ep.q}")
    print(f"  ring test     : {rep.general}")
    print(f"  matrix form   : {rep.matrix}")
    print(f"  euler norm    : {rep.euler}")
    print(f"  z-chain       : {rep.z_lucas}")
    print(f"  consistent    : {rep.consistent}")
    print()


if __name__ == "__main__":
    for case in CASES:
        show(*case)
