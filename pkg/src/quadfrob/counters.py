"""Operation counters attached to test verdicts.

Counts are per-invocation: every test starts from a fresh instance and
returns it with the verdict, so concurrent calls never share state.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields


@dataclass
class OpCounters:
    """Cost ledger for one test run.

    full_modmul / full_modsquare count multiplications and squarings of two
    full-width residues followed by a reduction; small_scalar_mul counts
    word-by-residue products (the scalar side is a, S, T or similar, assumed
    small); modadd counts additions/subtractions of residues.
    """

    full_modmul: int = 0
    full_modsquare: int = 0
    small_scalar_mul: int = 0
    modadd: int = 0
    loop_iterations: int = 0

    def merge(self, other: "OpCounters") -> None:
        self.full_modmul += other.full_modmul
        self.full_modsquare += other.full_modsquare
        self.small_scalar_mul += other.small_scalar_mul
        self.modadd += other.modadd
        self.loop_iterations += other.loop_iterations

    def __add__(self, other: "OpCounters") -> "OpCounters":
        out = OpCounters()
        out.merge(self)
        out.merge(other)
        return out

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def merged(parts: list[OpCounters]) -> OpCounters:
    total = OpCounters()
    for p in parts:
        total.merge(p)
    return total
