"""Two-watched-literal unit propagation with an undo trail.

Literals are ints: ``2 * var`` is the positive literal, ``2 * var + 1`` the
negative one, so ``lit ^ 1`` negates.
"""

from __future__ import annotations

from typing import Iterable, Sequence

UNASSIGNED = -1


def lit_of(var: int, polarity: int) -> int:
    return 2 * var + (0 if polarity else 1)


def clause_lits(literals: Iterable[tuple[int, int]]) -> list[int]:
    return [lit_of(v, p) for v, p in literals]


class UnitPropagator:
    """Incremental unit propagation over a fixed clause list.

    For Horn, anti-Horn and (already satisfiable) 2-CNF clause sets a
    conflict-free, propagation-closed partial assignment always extends to a
    model, which is what makes ``try_assign`` a complete satisfiability test
    for those classes.
    """

    def __init__(self, num_vars: int, clauses: Iterable[Sequence[int]]):
        self.num_vars = num_vars
        self.value = [UNASSIGNED] * num_vars
        self.trail: list[int] = []
        self.qhead = 0
        self.watches: list[list[int]] = [[] for _ in range(2 * num_vars)]
        self.clauses: list[list[int]] = []
        self.ok = True
        units: list[int] = []
        for raw in clauses:
            c = list(dict.fromkeys(raw))
            if not c:
                self.ok = False
            elif len(c) == 1:
                units.append(c[0])
            else:
                ci = len(self.clauses)
                self.clauses.append(c)
                self.watches[c[0]].append(ci)
                self.watches[c[1]].append(ci)
        for lit in units:
            if not self.ok:
                break
            val = self.value[lit >> 1]
            if val == UNASSIGNED:
                self._assign(lit)
            elif val == (lit & 1):
                self.ok = False
        if self.ok:
            self.ok = self._propagate()

    def lit_is_true(self, lit: int) -> bool:
        return self.value[lit >> 1] == ((lit & 1) ^ 1)

    def lit_is_false(self, lit: int) -> bool:
        return self.value[lit >> 1] == (lit & 1)

    def _assign(self, lit: int) -> None:
        self.value[lit >> 1] = (lit & 1) ^ 1
        self.trail.append(lit)

    def _propagate(self) -> bool:
        value = self.value
        watches = self.watches
        clauses = self.clauses
        trail = self.trail
        while self.qhead < len(trail):
            lit = trail[self.qhead]
            self.qhead += 1
            false_lit = lit ^ 1
            watching = watches[false_lit]
            keep: list[int] = []
            conflict = False
            for pos, ci in enumerate(watching):
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                if value[first >> 1] == ((first & 1) ^ 1):
                    keep.append(ci)
                    continue
                for m in range(2, len(c)):
                    other = c[m]
                    if value[other >> 1] != (other & 1):
                        c[1], c[m] = other, false_lit
                        watches[other].append(ci)
                        break
                else:
                    keep.append(ci)
                    if value[first >> 1] == (first & 1):
                        conflict = True
                        keep.extend(watching[pos + 1 :])
                        break
                    self._assign(first)
            watches[false_lit] = keep
            if conflict:
                return False
        return True

    def undo(self, mark: int) -> None:
        value = self.value
        for lit in self.trail[mark:]:
            value[lit >> 1] = UNASSIGNED
        del self.trail[mark:]
        self.qhead = mark

    def try_assign(self, lit: int) -> bool:
        """Assign ``lit`` and propagate; on conflict restore the previous state."""
        val = self.value[lit >> 1]
        if val != UNASSIGNED:
            return val == ((lit & 1) ^ 1)
        mark = len(self.trail)
        self._assign(lit)
        if self._propagate():
            return True
        self.undo(mark)
        return False
