"""Closure-based classification of relations into the six tractability properties.

A relation is Horn iff it is closed under coordinatewise AND, anti-Horn iff
closed under OR, bijunctive iff closed under ternary majority, affine iff
closed under ternary XOR. The definitional oracle below checks the CNF /
linear-system definitions directly and is used to cross-check the closure tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable

from lexsat.core import Bits, Relation, RelationSet
from lexsat.errors import ContractViolation, ResourceLimitError

PROPERTIES = ("zero_valid", "one_valid", "horn", "anti_horn", "bijunctive", "affine")
CLOSURE_PROPERTIES = ("horn", "anti_horn", "bijunctive", "affine")

ORACLE_MAX_ARITY = 4


@dataclass(frozen=True)
class Taxonomy:
    zero_valid: bool
    one_valid: bool
    horn: bool
    anti_horn: bool
    bijunctive: bool
    affine: bool

    def flags(self) -> dict[str, bool]:
        return {p: getattr(self, p) for p in PROPERTIES}

    def holding(self) -> list[str]:
        return [p for p in PROPERTIES if getattr(self, p)]

    @property
    def schaefer(self) -> bool:
        """True iff one of the four closure properties holds."""
        return self.horn or self.anti_horn or self.bijunctive or self.affine


@dataclass(frozen=True)
class DispatchVerdict:
    with_constants_poly: bool
    without_constants_poly: bool
    direction: str
    reason: str | None

    def poly(self, allow_constants: bool) -> bool:
        return self.with_constants_poly if allow_constants else self.without_constants_poly


def _closed_pairwise(tuples: frozenset, op) -> bool:
    rows = list(tuples)
    for i, a in enumerate(rows):
        for b in rows[i + 1 :]:
            if tuple(op(x, y) for x, y in zip(a, b)) not in tuples:
                return False
    return True


def _bijunctive(rel: Relation) -> bool:
    # Majority-closed iff R equals the join of its two-coordinate projections;
    # this avoids the cubic triple loop on large tables.
    if len(rel.tuples) <= 2:
        return True
    k = rel.arity
    pairs = {
        (i, j): {(t[i], t[j]) for t in rel.tuples} for i in range(k) for j in range(i, k)
    }
    count = 0
    for cand in product((0, 1), repeat=k):
        if all((cand[i], cand[j]) in proj for (i, j), proj in pairs.items()):
            count += 1
            if cand not in rel.tuples:
                return False
    return count == len(rel.tuples)


def _affine(rel: Relation) -> bool:
    # Closed under x^y^z iff the table is empty or a coset of a GF(2) subspace.
    if not rel.tuples:
        return True
    rows = [int("".join(map(str, t)), 2) for t in rel.tuples]
    base = rows[0]
    basis: dict[int, int] = {}
    for r in rows:
        v = r ^ base
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(rows) == 1 << len(basis)


def has_property(relation: Relation, prop: str) -> bool:
    tuples = relation.tuples
    k = relation.arity
    if prop == "zero_valid":
        return (0,) * k in tuples
    if prop == "one_valid":
        return (1,) * k in tuples
    if prop == "horn":
        return _closed_pairwise(tuples, lambda x, y: x & y)
    if prop == "anti_horn":
        return _closed_pairwise(tuples, lambda x, y: x | y)
    if prop == "bijunctive":
        return _bijunctive(relation)
    if prop == "affine":
        return _affine(relation)
    raise ContractViolation(f"unknown property {prop!r}")


def is_closed_under(relation: Relation, op, op_arity: int) -> bool:
    """Literal polymorphism check: apply ``op`` coordinatewise to every tuple combination."""
    tuples = relation.tuples
    for combo in product(tuples, repeat=op_arity):
        if tuple(op(*col) for col in zip(*combo)) not in tuples:
            return False
    return True


def majority(a: int, b: int, c: int) -> int:
    return (a & b) | (a & c) | (b & c)


def xor3(a: int, b: int, c: int) -> int:
    return a ^ b ^ c


def classify(relation: Relation) -> Taxonomy:
    return Taxonomy(**{p: has_property(relation, p) for p in PROPERTIES})


def classify_set(s: RelationSet | Iterable[Relation]) -> Taxonomy:
    rels = list(s)
    if not rels:
        raise ContractViolation("cannot classify an empty relation set")
    per = [classify(r) for r in rels]
    return Taxonomy(**{p: all(getattr(t, p) for t in per) for p in PROPERTIES})


def dispatch_verdict(s: RelationSet, allow_constants: bool, direction: str) -> DispatchVerdict:
    if direction not in ("min", "max"):
        raise ContractViolation(f"direction must be 'min' or 'max', got {direction!r}")
    tax = s.taxonomy if isinstance(s, RelationSet) else classify_set(s)
    reason = next((p for p in CLOSURE_PROPERTIES if getattr(tax, p)), None)
    with_constants = reason is not None
    trivial = "zero_valid" if direction == "min" else "one_valid"
    without_constants = with_constants or getattr(tax, trivial)
    if not allow_constants and reason is None and without_constants:
        reason = trivial
    return DispatchVerdict(with_constants, without_constants, direction, reason)


# --- definitional oracle -------------------------------------------------------------


def _clause_holds(literals: tuple[tuple[int, int], ...], row: Bits) -> bool:
    return any(row[i] == pol for i, pol in literals)


def candidate_clauses(k: int, prop: str) -> list[tuple[tuple[int, int], ...]]:
    """All clauses of the syntactic shape for ``prop`` over k coordinates.

    A literal is ``(coordinate, polarity)``; polarity 1 is unnegated. The empty
    clause is included so that the empty relation is expressible.
    """
    out: list[tuple[tuple[int, int], ...]] = []
    for signs in product((None, 0, 1), repeat=k):
        lits = tuple((i, s) for i, s in enumerate(signs) if s is not None)
        positives = sum(1 for _, s in lits if s == 1)
        negatives = len(lits) - positives
        if prop == "horn" and positives > 1:
            continue
        if prop == "anti_horn" and negatives > 1:
            continue
        if prop == "bijunctive" and len(lits) > 2:
            continue
        out.append(lits)
    return out


def candidate_equations(k: int) -> list[tuple[tuple[int, ...], int]]:
    """All 2^k * 2 linear equations over k coordinates as ``(coordinates, rhs)``."""
    out = []
    for mask in product((0, 1), repeat=k):
        coords = tuple(i for i, m in enumerate(mask) if m)
        for rhs in (0, 1):
            out.append((coords, rhs))
    return out


def _equation_holds(eq: tuple[tuple[int, ...], int], row: Bits) -> bool:
    coords, rhs = eq
    return sum(row[i] for i in coords) % 2 == rhs


def definitional_oracle(relation: Relation, prop: str, *, max_arity: int = ORACLE_MAX_ARITY) -> bool:
    """Decide a closure property from its syntactic definition by exhaustive search."""
    k = relation.arity
    if k > max_arity:
        raise ResourceLimitError(f"definitional oracle limited to arity {max_arity}, got {k}")
    space = list(product((0, 1), repeat=k))
    if prop == "affine":
        kept = [e for e in candidate_equations(k) if all(_equation_holds(e, t) for t in relation.tuples)]
        defined = {t for t in space if all(_equation_holds(e, t) for e in kept)}
    elif prop in ("horn", "anti_horn", "bijunctive"):
        kept = [
            c for c in candidate_clauses(k, prop) if all(_clause_holds(c, t) for t in relation.tuples)
        ]
        defined = {t for t in space if all(_clause_holds(c, t) for c in kept)}
    else:
        raise ContractViolation(f"no definitional oracle for {prop!r}")
    return defined == set(relation.tuples)


def all_relations(arity: int) -> Iterable[Relation]:
    """Every relation of the given arity (2^(2^arity) of them)."""
    space = list(product((0, 1), repeat=arity))
    for r in range(len(space) + 1):
        for chosen in combinations(space, r):
            yield Relation(f"R{arity}_" + "_".join("".join(map(str, t)) for t in chosen), arity, frozenset(chosen))
