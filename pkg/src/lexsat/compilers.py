"""Compile relations and formulas to class-specific normal forms.

Variables in a :class:`CompiledForm` are referred to by their position in the
formula's variable order.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import product
from typing import Sequence, Union

from lexsat.classifier import candidate_clauses, has_property
from lexsat.core import Formula, Relation, VarOrder
from lexsat.errors import ContractViolation, PreconditionError

KINDS = ("two_cnf", "horn_cnf", "anti_horn_cnf", "linear_system")
_KIND_PROPERTY = {
    "two_cnf": "bijunctive",
    "horn_cnf": "horn",
    "anti_horn_cnf": "anti_horn",
    "linear_system": "affine",
}
VERIFY_MAX_ARITY = 12


@dataclass(frozen=True)
class CnfClause:
    """Disjunction of ``(variable, polarity)`` literals; polarity 1 is unnegated."""

    literals: frozenset

    def __post_init__(self) -> None:
        lits = frozenset(self.literals)
        seen: dict = {}
        for v, p in lits:
            if seen.get(v, p) != p:
                raise ContractViolation(f"tautological clause on variable {v!r}")
            seen[v] = p
        object.__setattr__(self, "literals", lits)

    @classmethod
    def make(cls, literals) -> CnfClause | None:
        """Build a clause, returning None when it is a tautology."""
        lits = frozenset(literals)
        vars_ = {}
        for v, p in lits:
            if vars_.get(v, p) != p:
                return None
            vars_[v] = p
        return cls(lits)

    @property
    def positives(self) -> int:
        return sum(1 for _, p in self.literals if p)

    @property
    def negatives(self) -> int:
        return len(self.literals) - self.positives

    def satisfied_by(self, bits: Sequence[int]) -> bool:
        return any(bits[v] == p for v, p in self.literals)

    def __len__(self) -> int:
        return len(self.literals)


@dataclass(frozen=True)
class LinearEquation:
    """XOR of ``variables`` equals ``rhs``; no variables with rhs 1 is inconsistent."""

    variables: frozenset
    rhs: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", frozenset(self.variables))
        if self.rhs not in (0, 1):
            raise ContractViolation("equation right-hand side must be 0 or 1")

    def satisfied_by(self, bits: Sequence[int]) -> bool:
        return sum(bits[v] for v in self.variables) % 2 == self.rhs

    @property
    def inconsistent(self) -> bool:
        return not self.variables and self.rhs == 1


Item = Union[CnfClause, LinearEquation]


@dataclass(frozen=True)
class CompiledForm:
    kind: str
    items: tuple
    vars: VarOrder

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(self.items))
        check_shape(self.kind, self.items)

    @property
    def clauses(self) -> tuple[CnfClause, ...]:
        if self.kind == "linear_system":
            raise AttributeError("a linear system has equations, not clauses")
        return self.items

    @property
    def equations(self) -> tuple[LinearEquation, ...]:
        if self.kind != "linear_system":
            raise AttributeError(f"a {self.kind} form has clauses, not equations")
        return self.items

    def satisfied_by(self, bits: Sequence[int]) -> bool:
        return all(it.satisfied_by(bits) for it in self.items)


def check_shape(kind: str, items: Sequence[Item]) -> None:
    if kind not in KINDS:
        raise ContractViolation(f"unknown compiled form kind {kind!r}")
    for it in items:
        if kind == "linear_system":
            ok = isinstance(it, LinearEquation)
        elif kind == "two_cnf":
            ok = isinstance(it, CnfClause) and len(it) <= 2
        elif kind == "horn_cnf":
            ok = isinstance(it, CnfClause) and it.positives <= 1
        else:
            ok = isinstance(it, CnfClause) and it.negatives <= 1
        if not ok:
            raise ContractViolation(f"{it!r} violates the {kind} shape")


def _drop_subsumed(clauses: list[frozenset]) -> list[frozenset]:
    clauses = sorted(set(clauses), key=lambda c: (len(c), sorted(c)))
    kept: list[frozenset] = []
    for c in clauses:
        if not any(k <= c for k in kept):
            kept.append(c)
    return kept


def _equation_basis(equations: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Row-reduce ``(mask, rhs)`` equations, keeping an independent subset."""
    basis: dict[int, tuple[int, int]] = {}
    out = []
    for mask, rhs in equations:
        m, r = mask, rhs
        while m:
            top = m.bit_length() - 1
            if top not in basis:
                basis[top] = (m, r)
                out.append((mask, rhs))
                break
            bm, br = basis[top]
            m ^= bm
            r ^= br
        else:
            if r:
                return [(0, 1)]
    return out


_cache: dict[tuple[Relation, str, bool], tuple] = {}
_cache_lock = threading.Lock()


def compile_relation(
    relation: Relation, kind: str, *, minimize: bool = True, verify: bool = True
) -> tuple:
    """Normal form of a single relation over coordinates ``0..arity-1``.

    Keeps every candidate clause (or equation) of the required shape that all
    tuples satisfy. With ``minimize`` subsumed clauses and dependent equations
    are dropped; the conjunction is unchanged. Results are memoized.
    """
    if kind not in KINDS:
        raise ContractViolation(f"unknown compiled form kind {kind!r}")
    key = (relation, kind, minimize)
    hit = _cache.get(key)
    if hit is not None:
        return hit
    prop = _KIND_PROPERTY[kind]
    if not has_property(relation, prop):
        raise PreconditionError(f"relation {relation.name} is not {prop}; cannot compile to {kind}")
    k = relation.arity
    tuples = relation.tuples
    if kind == "linear_system":
        kept = []
        for coeffs in product((0, 1), repeat=k):
            mask = sum(1 << i for i, c in enumerate(coeffs) if c)
            for rhs in (0, 1):
                if all(sum(t[i] for i in range(k) if coeffs[i]) % 2 == rhs for t in tuples):
                    kept.append((mask, rhs))
        basis = _equation_basis(kept) if minimize else kept
        result = tuple(
            LinearEquation(frozenset(i for i in range(k) if mask >> i & 1), rhs) for mask, rhs in basis
        )
    else:
        shape = {"two_cnf": "bijunctive", "horn_cnf": "horn", "anti_horn_cnf": "anti_horn"}[kind]
        kept = [
            frozenset(c)
            for c in candidate_clauses(k, shape)
            if all(any(t[i] == p for i, p in c) for t in tuples)
        ]
        result = tuple(CnfClause(c) for c in (_drop_subsumed(kept) if minimize else kept))
    if verify and k <= VERIFY_MAX_ARITY:
        defined = {
            t for t in product((0, 1), repeat=k) if all(it.satisfied_by(t) for it in result)
        }
        if defined != set(tuples):
            raise AssertionError(f"compilation of {relation.name} to {kind} is not exact")
    with _cache_lock:
        _cache.setdefault(key, result)
    return result


def compile_formula(formula: Formula, kind: str) -> CompiledForm:
    """Instantiate each clause's relation normal form on its arguments.

    Constant arguments are folded: a literal made true by a constant drops its
    clause, a literal made false disappears; equations absorb constants into the
    right-hand side and repeated variables cancel in pairs.
    """
    pos = formula.vars.position
    items: list[Item] = []
    for clause in formula.clauses:
        proto = compile_relation(clause.relation, kind)
        args = [pos[a] if isinstance(a, str) else None for a in clause.args]
        consts = [a if not isinstance(a, str) else None for a in clause.args]
        if kind == "linear_system":
            for eq in proto:
                rhs = eq.rhs
                odd: set[int] = set()
                for i in eq.variables:
                    if args[i] is None:
                        rhs ^= consts[i]
                    else:
                        odd ^= {args[i]}
                items.append(LinearEquation(frozenset(odd), rhs))
        else:
            for cl in proto:
                lits = []
                satisfied = False
                for i, p in cl.literals:
                    if args[i] is None:
                        if consts[i] == p:
                            satisfied = True
                            break
                    else:
                        lits.append((args[i], p))
                if satisfied:
                    continue
                made = CnfClause.make(lits)
                if made is not None:
                    items.append(made)
    if kind == "linear_system":
        items = [e for e in items if e.variables or e.rhs]
    return CompiledForm(kind, tuple(items), formula.vars)
