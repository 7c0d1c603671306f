"""Line-oriented instance files.

Grammar (``#`` starts a comment, blank lines are ignored)::

    relation NAME ARITY TUPLE...      tuples as bitstrings, e.g. 01 10
    vars V1 V2 ... Vn                 declaration order = significance order
    clause NAME ARG...                ARG is a declared variable or 0 / 1

Relations must be declared before the clauses that use them; ``vars`` appears
at most once and before any clause.
"""

from __future__ import annotations

import re

from lexsat.core import Clause, Formula, Relation, RelationSet, VarOrder
from lexsat.errors import ContractViolation, ParseError

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-\[\]]*\Z")


def _tokens(line: str) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with their 1-based columns."""
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def parse_instance(text: str) -> tuple[RelationSet, Formula]:
    relations: dict[str, Relation] = {}
    names: list[str] | None = None
    raw_clauses: list[tuple[int, int, str, list[tuple[str, int]]]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        keyword, kcol = toks[0]
        if keyword == "relation":
            if len(toks) < 3:
                raise ParseError("expected: relation NAME ARITY TUPLE...", lineno, kcol)
            name, ncol = toks[1]
            if not _NAME.match(name):
                raise ParseError(f"invalid relation name {name!r}", lineno, ncol)
            if name in relations:
                raise ParseError(f"duplicate relation {name!r}", lineno, ncol)
            arity_text, acol = toks[2]
            if not arity_text.isdigit() or int(arity_text) < 1:
                raise ParseError(f"arity must be a positive integer, got {arity_text!r}", lineno, acol)
            arity = int(arity_text)
            rows = []
            for tup, tcol in toks[3:]:
                if any(ch not in "01" for ch in tup):
                    raise ParseError(f"tuple {tup!r} is not a bitstring", lineno, tcol)
                if len(tup) != arity:
                    raise ParseError(f"tuple {tup!r} does not have length {arity}", lineno, tcol)
                rows.append(tup)
            relations[name] = Relation.from_bitstrings(name, arity, rows)
        elif keyword == "vars":
            if names is not None:
                raise ParseError("duplicate vars declaration", lineno, kcol)
            if raw_clauses:
                raise ParseError("vars must be declared before clauses", lineno, kcol)
            names = []
            seen = set()
            for v, vcol in toks[1:]:
                if v in ("0", "1") or not _NAME.match(v):
                    raise ParseError(f"invalid variable name {v!r}", lineno, vcol)
                if v in seen:
                    raise ParseError(f"duplicate variable {v!r}", lineno, vcol)
                seen.add(v)
                names.append(v)
        elif keyword == "clause":
            if len(toks) < 2:
                raise ParseError("expected: clause NAME ARG...", lineno, kcol)
            raw_clauses.append((lineno, toks[1][1], toks[1][0], toks[2:]))
        else:
            raise ParseError(f"unknown keyword {keyword!r}", lineno, kcol)

    if not relations:
        raise ParseError("no relations declared", max(1, len(text.splitlines())), 1)
    rel_set = RelationSet(tuple(relations.values()))
    declared = set(names or [])
    clauses = []
    for lineno, ncol, name, args in raw_clauses:
        if name not in relations:
            raise ParseError(f"undeclared relation {name!r}", lineno, ncol)
        rel = relations[name]
        if len(args) != rel.arity:
            raise ParseError(
                f"relation {name} has arity {rel.arity}, got {len(args)} arguments", lineno, ncol
            )
        parsed = []
        for a, acol in args:
            if a in ("0", "1"):
                parsed.append(int(a))
            elif a in declared:
                parsed.append(a)
            else:
                raise ParseError(f"undeclared variable {a!r}", lineno, acol)
        clauses.append(Clause(rel, tuple(parsed)))
    try:
        formula = Formula(VarOrder(tuple(names or ())), tuple(clauses), rel_set)
    except ContractViolation as exc:  # pragma: no cover - guarded above
        raise ParseError(str(exc), 1, 1) from exc
    return rel_set, formula


def serialize_instance(formula: Formula, comments: list[str] | None = None) -> str:
    lines = [f"# {c}" for c in comments or []]
    for rel in formula.relation_set:
        lines.append(" ".join(["relation", rel.name, str(rel.arity), *rel.bitstrings()]))
    lines.append(" ".join(["vars", *formula.vars.names]))
    for c in formula.clauses:
        lines.append(" ".join(["clause", c.relation.name, *(str(a) for a in c.args)]))
    return "\n".join(lines) + "\n"
