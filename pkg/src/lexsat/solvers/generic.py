"""Exponential procedures: chronological backtracking and the brute-force oracle."""

from __future__ import annotations

from itertools import product
from typing import Callable, Mapping, Sequence

from lexsat.core import Formula
from lexsat.errors import ContractViolation, ResourceLimitError

BRUTE_FORCE_BOUND = 24


def _clause_specs(formula: Formula) -> list[tuple[list[int | None], list[int | None], list[tuple]]]:
    pos = formula.vars.position
    specs = []
    for c in formula.clauses:
        idx = [pos[a] if isinstance(a, str) else None for a in c.args]
        const = [None if isinstance(a, str) else a for a in c.args]
        specs.append((idx, const, list(c.relation.tuples)))
    return specs


def backtrack_sat(formula: Formula, fix: Mapping[int, int] | None = None) -> list[int] | None:
    """Find a model extending ``fix`` (position -> bit), or None.

    Variables are branched in order; after each assignment every clause on that
    variable is checked for a tuple still compatible with the fixed arguments.
    """
    n = formula.num_vars
    value = [-1] * n
    for v, b in (fix or {}).items():
        if not 0 <= v < n:
            raise ContractViolation(f"fixed position {v} out of range")
        value[v] = b
    specs = _clause_specs(formula)
    occurs: list[list[int]] = [[] for _ in range(n)]
    for ci, (idx, _, _) in enumerate(specs):
        for v in set(i for i in idx if i is not None):
            occurs[v].append(ci)

    def alive(ci: int) -> bool:
        idx, const, tuples = specs[ci]
        for t in tuples:
            for k, v in enumerate(idx):
                want = const[k] if v is None else value[v]
                if want != -1 and want != t[k]:
                    break
            else:
                return True
        return False

    if not all(alive(ci) for ci in range(len(specs))):
        return None
    order = [v for v in range(n) if value[v] == -1]
    tried = [0] * len(order)
    depth = 0
    while depth < len(order):
        v = order[depth]
        if tried[depth] == 2:
            tried[depth] = 0
            value[v] = -1
            depth -= 1
            if depth < 0:
                return None
            continue
        value[v] = tried[depth]
        tried[depth] += 1
        if all(alive(ci) for ci in occurs[v]):
            depth += 1
    return value


def model_checker(formula: Formula) -> Callable[[Sequence[int]], bool]:
    """A fast clause-by-clause membership test equivalent to core.evaluate."""
    specs = [
        (idx, const, frozenset(tuples)) for idx, const, tuples in _clause_specs(formula)
    ]

    def check(bits: Sequence[int]) -> bool:
        for idx, const, tuples in specs:
            row = tuple(const[k] if v is None else bits[v] for k, v in enumerate(idx))
            if row not in tuples:
                return False
        return True

    return check


def brute_force_models(formula: Formula, direction: str = "min", *, bound: int = BRUTE_FORCE_BOUND):
    """Yield all models in lexicographic order (ascending for min, descending for max)."""
    if formula.num_vars > bound:
        raise ResourceLimitError(
            f"brute force limited to {bound} variables, formula has {formula.num_vars}"
        )
    if direction not in ("min", "max"):
        raise ContractViolation(f"direction must be 'min' or 'max', got {direction!r}")
    check = model_checker(formula)
    values = (0, 1) if direction == "min" else (1, 0)
    for bits in product(values, repeat=formula.num_vars):
        if check(bits):
            yield bits
