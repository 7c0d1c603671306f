"""Relations, S-formulae and assignments.

Relations are kept extensionally as tuple tables. A formula is an ordered
variable universe plus a conjunction of clauses, each clause applying one
relation of its relation set to variables or the constants 0/1. Position 0 of
the variable order is the most significant bit of an assignment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import TYPE_CHECKING, Iterable, Iterator, Mapping, Sequence, Union

from lexsat.errors import ContractViolation, ResourceLimitError

if TYPE_CHECKING:
    from lexsat.classifier import Taxonomy

Bits = tuple[int, ...]
# A clause argument: a variable name or the constant 0 / 1.
Arg = Union[str, int]

DEFAULT_ENUMERATION_BOUND = 20


def _as_bits(raw: Iterable[int] | str) -> Bits:
    if isinstance(raw, str):
        if any(ch not in "01" for ch in raw):
            raise ContractViolation(f"not a bitstring: {raw!r}")
        return tuple(int(ch) for ch in raw)
    bits = tuple(int(b) for b in raw)
    if any(b not in (0, 1) for b in bits):
        raise ContractViolation(f"not a bit vector: {raw!r}")
    return bits


def bitstring(bits: Iterable[int]) -> str:
    return "".join(str(b) for b in bits)


@dataclass(frozen=True)
class Relation:
    """A k-ary Boolean relation given by its set of tuples."""

    name: str
    arity: int
    tuples: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not isinstance(self.arity, int) or self.arity < 1:
            raise ContractViolation(f"relation {self.name}: arity must be a positive integer")
        normalized = frozenset(_as_bits(t) for t in self.tuples)
        for t in normalized:
            if len(t) != self.arity:
                raise ContractViolation(
                    f"relation {self.name}: tuple {bitstring(t)} does not have length {self.arity}"
                )
        object.__setattr__(self, "tuples", normalized)

    @classmethod
    def from_bitstrings(cls, name: str, arity: int, rows: Iterable[str]) -> Relation:
        return cls(name, arity, frozenset(_as_bits(r) for r in rows))

    @classmethod
    def full(cls, name: str, arity: int) -> Relation:
        return cls(name, arity, frozenset(product((0, 1), repeat=arity)))

    def __contains__(self, item: Iterable[int]) -> bool:
        return tuple(item) in self.tuples

    def __len__(self) -> int:
        return len(self.tuples)

    def sorted_tuples(self) -> list[Bits]:
        return sorted(self.tuples)

    def bitstrings(self) -> list[str]:
        return [bitstring(t) for t in self.sorted_tuples()]

    def complemented(self, name: str | None = None) -> Relation:
        """Flip every bit of every tuple."""
        return Relation(
            name or self.name,
            self.arity,
            frozenset(tuple(1 - b for b in t) for t in self.tuples),
        )

    def renamed(self, name: str) -> Relation:
        return Relation(name, self.arity, self.tuples)

    def __repr__(self) -> str:
        return f"Relation({self.name!r}, {self.arity}, {{{', '.join(self.bitstrings())}}})"


@dataclass(frozen=True)
class RelationSet:
    """A nonempty, finite, ordered catalog of relations with unique names."""

    relations: tuple[Relation, ...]

    def __post_init__(self) -> None:
        rels = tuple(self.relations)
        if not rels:
            raise ContractViolation("a relation set must be nonempty")
        names = [r.name for r in rels]
        if len(set(names)) != len(names):
            raise ContractViolation(f"duplicate relation names in {names}")
        object.__setattr__(self, "relations", rels)

    @classmethod
    def of(cls, *relations: Relation) -> RelationSet:
        return cls(tuple(relations))

    @cached_property
    def by_name(self) -> dict[str, Relation]:
        return {r.name: r for r in self.relations}

    @cached_property
    def taxonomy(self) -> Taxonomy:
        # Recomputation is deterministic, so a racing second computation is harmless.
        from lexsat.classifier import classify_set

        return classify_set(self)

    def __getitem__(self, name: str) -> Relation:
        try:
            return self.by_name[name]
        except KeyError:
            raise KeyError(f"unknown relation {name!r}") from None

    def __contains__(self, item: object) -> bool:
        if isinstance(item, Relation):
            return self.by_name.get(item.name) == item
        return item in self.by_name

    def __iter__(self) -> Iterator[Relation]:
        return iter(self.relations)

    def __len__(self) -> int:
        return len(self.relations)

    def union(self, other: Iterable[Relation]) -> RelationSet:
        merged = list(self.relations)
        for rel in other:
            if rel.name in self.by_name:
                if self.by_name[rel.name] != rel:
                    raise ContractViolation(f"conflicting definitions of relation {rel.name}")
                continue
            merged.append(rel)
        return RelationSet(tuple(merged))


@dataclass(frozen=True)
class VarOrder:
    """Distinct variable names; index 0 is the most significant variable."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        names = tuple(self.names)
        if len(set(names)) != len(names):
            raise ContractViolation("variable names must be distinct")
        for n in names:
            if not isinstance(n, str) or not n:
                raise ContractViolation(f"invalid variable name {n!r}")
        object.__setattr__(self, "names", names)

    @cached_property
    def position(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self.position[name]
        except KeyError:
            raise ContractViolation(f"undeclared variable {name!r}") from None

    def __contains__(self, name: object) -> bool:
        return name in self.position

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __getitem__(self, i: int) -> str:
        return self.names[i]


@dataclass(frozen=True)
class Clause:
    relation: Relation
    args: tuple[Arg, ...]

    def __post_init__(self) -> None:
        args = tuple(self.args)
        if len(args) != self.relation.arity:
            raise ContractViolation(
                f"relation {self.relation.name} has arity {self.relation.arity}, "
                f"got {len(args)} arguments"
            )
        for a in args:
            if isinstance(a, bool) or not (isinstance(a, str) or a in (0, 1)):
                raise ContractViolation(f"clause argument must be a variable or 0/1, got {a!r}")
        object.__setattr__(self, "args", args)

    def variables(self) -> list[str]:
        return [a for a in self.args if isinstance(a, str)]

    def has_constants(self) -> bool:
        return any(not isinstance(a, str) for a in self.args)

    def __str__(self) -> str:
        return f"{self.relation.name}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Formula:
    """A conjunction of clauses over an ordered variable universe."""

    vars: VarOrder
    clauses: tuple[Clause, ...]
    relation_set: RelationSet

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if not isinstance(self.vars, VarOrder):
            object.__setattr__(self, "vars", VarOrder(tuple(self.vars)))
        for clause in self.clauses:
            if clause.relation not in self.relation_set:
                raise ContractViolation(f"relation {clause.relation.name} is not in the relation set")
            for v in clause.variables():
                if v not in self.vars:
                    raise ContractViolation(f"clause {clause} uses undeclared variable {v!r}")

    @classmethod
    def build(
        cls,
        relation_set: RelationSet,
        variables: Sequence[str],
        clauses: Iterable[tuple[str, Sequence[Arg]]],
    ) -> Formula:
        """Convenience constructor taking clauses as ``(relation_name, args)`` pairs."""
        built = tuple(Clause(relation_set[name], tuple(args)) for name, args in clauses)
        return cls(VarOrder(tuple(variables)), built, relation_set)

    @property
    def num_vars(self) -> int:
        return len(self.vars)

    def has_constants(self) -> bool:
        return any(c.has_constants() for c in self.clauses)

    def used_relations(self) -> RelationSet | None:
        names = {c.relation.name for c in self.clauses}
        rels = tuple(r for r in self.relation_set if r.name in names)
        return RelationSet(rels) if rels else None

    def __str__(self) -> str:
        body = " & ".join(str(c) for c in self.clauses) or "TRUE"
        return f"[{' '.join(self.vars)}] {body}"


@dataclass(frozen=True, order=False)
class Assignment:
    """Total assignment as a bit vector indexed by variable position."""

    bits: Bits

    def __post_init__(self) -> None:
        object.__setattr__(self, "bits", _as_bits(self.bits))

    @classmethod
    def from_string(cls, text: str) -> Assignment:
        return cls(_as_bits(text))

    @classmethod
    def zeros(cls, n: int) -> Assignment:
        return cls((0,) * n)

    @classmethod
    def ones(cls, n: int) -> Assignment:
        return cls((1,) * n)

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i: int) -> int:
        return self.bits[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __str__(self) -> str:
        return bitstring(self.bits)

    def __lt__(self, other: Assignment) -> bool:
        return lex_compare(self, other) < 0

    def __le__(self, other: Assignment) -> bool:
        return lex_compare(self, other) <= 0

    def __gt__(self, other: Assignment) -> bool:
        return lex_compare(self, other) > 0

    def __ge__(self, other: Assignment) -> bool:
        return lex_compare(self, other) >= 0

    def complemented(self) -> Assignment:
        return Assignment(tuple(1 - b for b in self.bits))

    def as_dict(self, order: VarOrder) -> dict[str, int]:
        return dict(zip(order.names, self.bits))


def _read_arg(arg: Arg, position: Mapping[str, int], bits: Sequence[int]) -> int:
    return bits[position[arg]] if isinstance(arg, str) else arg


def evaluate(formula: Formula, assignment: Assignment | Sequence[int]) -> bool:
    """True iff every clause's argument tuple lies in its relation."""
    bits = assignment.bits if isinstance(assignment, Assignment) else tuple(assignment)
    if len(bits) != formula.num_vars:
        raise ContractViolation(
            f"assignment has {len(bits)} bits, formula has {formula.num_vars} variables"
        )
    pos = formula.vars.position
    for clause in formula.clauses:
        row = tuple(_read_arg(a, pos, bits) for a in clause.args)
        if row not in clause.relation.tuples:
            return False
    return True


def lex_compare(a: Assignment | Sequence[int], b: Assignment | Sequence[int]) -> int:
    """Return -1, 0 or 1; position 0 is the most significant bit."""
    x = tuple(a)
    y = tuple(b)
    if len(x) != len(y):
        raise ContractViolation(f"cannot compare assignments of length {len(x)} and {len(y)}")
    for p, q in zip(x, y):
        if p != q:
            return -1 if p < q else 1
    return 0


def substitute(formula: Formula, source: Arg, target: Arg, *, shrink: bool = False) -> Formula:
    """Replace every occurrence of ``source`` by ``target`` (Phi[source/target]).

    The variable universe is kept as is unless ``shrink`` is set, in which case
    a replaced variable is dropped from it.
    """
    if isinstance(target, str) and target not in formula.vars:
        raise ContractViolation(f"substitution target {target!r} is not a declared variable")
    if not isinstance(target, str) and target not in (0, 1):
        raise ContractViolation(f"substitution target must be a variable or 0/1, got {target!r}")
    if isinstance(source, str):
        if source not in formula.vars:
            raise ContractViolation(f"substitution source {source!r} is not a declared variable")
    elif source not in (0, 1):
        raise ContractViolation(f"substitution source must be a variable or 0/1, got {source!r}")

    def swap(a: Arg) -> Arg:
        # bool-safe comparison: variables are str, constants are int
        return target if type(a) is type(source) and a == source else a

    clauses = tuple(Clause(c.relation, tuple(swap(a) for a in c.args)) for c in formula.clauses)
    order = formula.vars
    if shrink and isinstance(source, str) and source != target:
        order = VarOrder(tuple(v for v in order if v != source))
    return Formula(order, clauses, formula.relation_set)


def fix_variables(formula: Formula, fix: Mapping[str, int], *, shrink: bool = False) -> Formula:
    """Substitute constants for several variables in one pass."""
    for v, b in fix.items():
        if v not in formula.vars:
            raise ContractViolation(f"cannot fix undeclared variable {v!r}")
        if b not in (0, 1):
            raise ContractViolation(f"fixed value for {v!r} must be 0 or 1")
    clauses = tuple(
        Clause(c.relation, tuple(fix.get(a, a) if isinstance(a, str) else a for a in c.args))
        for c in formula.clauses
    )
    order = formula.vars
    if shrink:
        order = VarOrder(tuple(v for v in order if v not in fix))
    return Formula(order, clauses, formula.relation_set)


def relation_of(
    formula: Formula,
    *,
    exists: int = 0,
    bound: int = DEFAULT_ENUMERATION_BOUND,
    name: str = "REL",
) -> Relation:
    """The relation defined by ``formula`` over its variable order.

    The last ``exists`` variables are existentially quantified and projected
    away, so the result has arity ``num_vars - exists``.
    """
    n = formula.num_vars
    if n > bound:
        raise ResourceLimitError(f"relation_of: {n} variables exceeds the enumeration bound {bound}")
    if not 0 <= exists <= n:
        raise ContractViolation(f"cannot project {exists} of {n} variables")
    if n - exists < 1:
        raise ContractViolation("the projected relation must keep at least one variable")
    keep = n - exists
    rows = {bits[:keep] for bits in product((0, 1), repeat=n) if evaluate(formula, bits)}
    return Relation(name, keep, frozenset(rows))


def project(
    assignment: Assignment | Sequence[int], order: VarOrder, keep: Iterable[str]
) -> Assignment:
    """Restrict an assignment to the kept variables, preserving their order."""
    bits = tuple(assignment)
    if len(bits) != len(order):
        raise ContractViolation("assignment length does not match the variable order")
    wanted = set(keep)
    for v in wanted:
        if v not in order:
            raise ContractViolation(f"cannot keep undeclared variable {v!r}")
    return Assignment(tuple(b for v, b in zip(order.names, bits) if v in wanted))


def all_assignments(n: int) -> Iterator[Bits]:
    """All bit vectors of length n in ascending lexicographic order."""
    return product((0, 1), repeat=n)
