"""Gaussian elimination over GF(2) with int bitsets.

Variable ``i`` is bit ``i`` of a row mask. Each stored row is pivoted on its
highest set bit, i.e. on its least significant variable, so a pivot variable
is determined by the more significant variables of its row.
"""

from __future__ import annotations

from typing import Iterable


class EchelonSystem:
    def __init__(self) -> None:
        self.rows: dict[int, tuple[int, int]] = {}
        self.consistent = True

    def add(self, mask: int, rhs: int) -> bool:
        """Insert ``XOR(mask) = rhs``; returns False once the system is inconsistent."""
        rows = self.rows
        while mask:
            top = mask.bit_length() - 1
            hit = rows.get(top)
            if hit is None:
                rows[top] = (mask, rhs)
                return self.consistent
            mask ^= hit[0]
            rhs ^= hit[1]
        if rhs:
            self.consistent = False
        return self.consistent

    def extend(self, equations: Iterable[tuple[int, int]]) -> bool:
        for mask, rhs in equations:
            if not self.add(mask, rhs):
                return False
        return self.consistent

    @property
    def rank(self) -> int:
        return len(self.rows)

    def forced_value(self, var: int, ones: int) -> int | None:
        """Value of ``var`` forced by the more significant variables, or None if free.

        ``ones`` is the bitset of more significant variables currently set to 1.
        """
        row = self.rows.get(var)
        if row is None:
            return None
        mask, rhs = row
        rest = mask ^ (1 << var)
        return rhs ^ ((rest & ones).bit_count() & 1)


def gf2_satisfiable(equations: Iterable[tuple[int, int]]) -> bool:
    system = EchelonSystem()
    return system.extend(equations)
