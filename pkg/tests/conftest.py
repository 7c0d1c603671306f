"""Shared helpers: independent brute-force oracles and formula builders."""

from __future__ import annotations

from itertools import product

import pytest

from lexsat.core import Formula, RelationSet

# Lines recorded by test_acceptance, echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def record(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def models(formula: Formula) -> list[tuple[int, ...]]:
    """All models in ascending lexicographic order, by direct table lookup."""
    pos = {v: i for i, v in enumerate(formula.vars.names)}
    out = []
    for bits in product((0, 1), repeat=formula.num_vars):
        ok = True
        for c in formula.clauses:
            row = tuple(bits[pos[a]] if isinstance(a, str) else a for a in c.args)
            if row not in c.relation.tuples:
                ok = False
                break
        if ok:
            out.append(bits)
    return out


def lexmin(formula: Formula):
    ms = models(formula)
    return ms[0] if ms else None


def lexmax(formula: Formula):
    ms = models(formula)
    return ms[-1] if ms else None


def bits(text: str) -> tuple[int, ...]:
    return tuple(int(ch) for ch in text)


def build(rel_set: RelationSet, variables, clauses) -> Formula:
    return Formula.build(rel_set, variables, clauses)


@pytest.fixture
def oracle():
    return {"models": models, "lexmin": lexmin, "lexmax": lexmax}
