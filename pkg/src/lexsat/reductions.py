"""Constructive reductions: gadget search, constant removal, parity gadget, 3-CNF translation.

Every reduction returns the transformed formula together with the original
("kept") variables. Projecting an optimal model of the output onto the kept
variables yields the optimal model of the input, provided the guard bits of the
constant-replacement variables hold (see :meth:`ReductionOutput.pull_back`).

Placement rule: variables standing in for constants go before the originals
(most significant); gadget auxiliaries and the parity variable go after them.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from lexsat.classifier import CLOSURE_PROPERTIES, has_property
from lexsat.core import (
    Arg,
    Assignment,
    Clause,
    Formula,
    Relation,
    RelationSet,
    VarOrder,
    project,
    relation_of,
)
from lexsat.errors import ContractViolation, ReductionError, ResourceLimitError

DEFAULT_STEP_CAP = 5_000_000
STEP_CAP_ENV = "LEXSAT_STEP_CAP"

TRUE_REL = Relation.from_bitstrings("[x]", 1, ["1"])
FALSE_REL = Relation.from_bitstrings("[~x]", 1, ["0"])
NEQ_REL = Relation.from_bitstrings("[x!=y]", 2, ["01", "10"])
EQUIV_REL = Relation.from_bitstrings("[x=y]", 2, ["00", "11"])


def or_shape(negations: int) -> Relation:
    """Ternary clause with the first ``negations`` coordinates negated."""
    rows = [
        t
        for t in product((0, 1), repeat=3)
        if any(t[i] == 0 for i in range(negations)) or any(t[i] == 1 for i in range(negations, 3))
    ]
    return Relation(f"OR3_{negations}neg", 3, frozenset(rows))


@dataclass(frozen=True)
class Budget:
    max_clauses: int = 3
    max_aux: int = 2
    step_cap: int | None = None

    def __post_init__(self) -> None:
        if self.max_clauses < 1 or self.max_aux < 0:
            raise ContractViolation("budget needs max_clauses >= 1 and max_aux >= 0")

    def cap(self) -> int:
        if self.step_cap is not None:
            return self.step_cap
        env = os.environ.get(STEP_CAP_ENV)
        if not env:
            return DEFAULT_STEP_CAP
        try:
            cap = int(env)
        except ValueError:
            raise ContractViolation(f"{STEP_CAP_ENV} must be an integer, got {env!r}") from None
        if cap < 1:
            raise ContractViolation(f"{STEP_CAP_ENV} must be positive")
        return cap


@dataclass(frozen=True)
class Implementation:
    """A formula over target coordinates x1..xk plus trailing existential auxiliaries."""

    target: Relation
    formula: Formula
    existential_suffix: int

    def defined_relation(self) -> Relation:
        return relation_of(self.formula, exists=self.existential_suffix, name=self.target.name)

    def verify(self) -> bool:
        return self.defined_relation().tuples == self.target.tuples

    def instantiate(self, args: Sequence[Arg], aux_names: Sequence[str]) -> list[Clause]:
        """Clauses of the gadget with coordinates bound to ``args`` and fresh auxiliaries."""
        k = self.target.arity
        if len(args) != k or len(aux_names) != self.existential_suffix:
            raise ContractViolation("wrong number of arguments or auxiliaries for the gadget")
        names = self.formula.vars.names
        binding: dict[str, Arg] = dict(zip(names[:k], args))
        binding.update(zip(names[k:], aux_names))
        return [
            Clause(c.relation, tuple(binding[a] if isinstance(a, str) else a for a in c.args))
            for c in self.formula.clauses
        ]


@dataclass(frozen=True)
class ReductionOutput:
    formula: Formula
    kept: tuple[str, ...]
    case_tag: str
    # Bits the output's constant stand-ins must take for a model to be meaningful.
    guard: dict = field(default_factory=dict)

    def kept_positions(self) -> list[int]:
        return [self.formula.vars.index(v) for v in self.kept]

    def project(self, assignment: Assignment) -> Assignment:
        """Plain sub-word extraction onto the kept variables."""
        return project(assignment, self.formula.vars, self.kept)

    def guard_holds(self, assignment: Assignment) -> bool:
        pos = self.formula.vars.position
        return all(assignment[pos[v]] == b for v, b in self.guard.items())

    def pull_back(self, assignment: Assignment | None) -> Assignment | None:
        """Map an optimal model of the output to the optimal model of the input.

        Returns None (unsatisfiable input) when the output is unsatisfiable or
        its optimum violates the guard: the input had no model, and the output
        only has models that read the constant stand-ins the wrong way round.
        """
        if assignment is None or not self.guard_holds(assignment):
            return None
        return self.project(assignment)


def _fresh(base: str, taken: set[str]) -> str:
    name = base
    i = 1
    while name in taken:
        name = f"{base}_{i}"
        i += 1
    taken.add(name)
    return name


def _complementive(rel: Relation) -> bool:
    return all(tuple(1 - b for b in t) in rel.tuples for t in rel.tuples)


def _provably_absent(target: Relation, s: RelationSet, allow_constants: bool) -> bool:
    """Polymorphism arguments showing no gadget of any size exists."""
    for prop in CLOSURE_PROPERTIES:
        # constant relations have all four closure properties
        if s.taxonomy.flags()[prop] and not has_property(target, prop):
            return True
    if not allow_constants:
        for prop in ("zero_valid", "one_valid"):
            if s.taxonomy.flags()[prop] and not has_property(target, prop):
                return True
        if all(_complementive(r) for r in s) and not _complementive(target):
            return True
    return False


def find_implementation(
    target: Relation,
    s: RelationSet,
    budget: Budget = Budget(),
    allow_constants: bool = False,
) -> Implementation | None:
    """Search conjunctions of S-clauses defining ``target`` up to existential auxiliaries.

    Enumeration order: clause count ascending, then auxiliary count ascending,
    then combinations of candidate clauses in lexicographic order of
    ``(relation index, argument pattern)`` where argument atoms are ordered
    x1 < ... < xk < y1 < ... < 0 < 1. The first match is returned; None means
    nothing was found within the budget.
    """
    return _find_cached(target, s, budget.max_clauses, budget.max_aux, allow_constants, budget.cap())


@lru_cache(maxsize=512)
def _find_cached(
    target: Relation,
    s: RelationSet,
    max_clauses: int,
    max_aux: int,
    allow_constants: bool,
    cap: int,
) -> Implementation | None:
    if _provably_absent(target, s, allow_constants):
        return None
    k = target.arity
    steps = 0
    for c in range(0, max_clauses + 1):
        for a in range(0, max_aux + 1 if c else 1):
            try:
                found, used = _search_level(target, s, c, a, allow_constants, cap - steps)
            except ResourceLimitError:
                raise ResourceLimitError(
                    f"gadget search for {target.name} exceeded the step cap of {cap}"
                ) from None
            steps += used
            if found is not None:
                names = tuple(f"x{i}" for i in range(1, k + 1)) + tuple(
                    f"y{j}" for j in range(1, a + 1)
                )
                impl = Implementation(target, Formula(VarOrder(names), tuple(found), s), a)
                assert impl.verify()
                return impl
    return None


def _search_level(
    target: Relation,
    s: RelationSet,
    c: int,
    a: int,
    allow_constants: bool,
    cap: int,
) -> tuple[list[Clause] | None, int]:
    k = target.arity
    n = k + a
    names = [f"x{i}" for i in range(1, k + 1)] + [f"y{j}" for j in range(1, a + 1)]
    atoms: list[Arg] = list(names) + ([0, 1] if allow_constants else [])
    size = 1 << n
    block = (1 << (1 << a)) - 1
    required = []
    forbidden = 0
    for t in product((0, 1), repeat=k):
        tidx = int("".join(map(str, t)), 2) if k else 0
        bmask = block << (tidx << a)
        if t in target.tuples:
            required.append(bmask)
        else:
            forbidden |= bmask
    full = (1 << size) - 1
    assignments = list(product((0, 1), repeat=n))

    def viable(mask: int) -> bool:
        return all(mask & r for r in required)

    candidates: list[tuple[Clause, int]] = []
    for rel in s:
        for args in product(atoms, repeat=rel.arity):
            mask = 0
            for idx, bits in enumerate(assignments):
                row = tuple(bits[names.index(x)] if isinstance(x, str) else x for x in args)
                if row in rel.tuples:
                    mask |= 1 << idx
            if viable(mask):
                candidates.append((Clause(rel, args), mask))

    steps = 0
    if c == 0:
        return ([] if full & forbidden == 0 else None), 1

    chosen: list[int] = []

    def dfs(start: int, depth: int, conj: int) -> bool:
        nonlocal steps
        for i in range(start, len(candidates)):
            steps += 1
            if steps > cap:
                raise ResourceLimitError(
                    f"gadget search for {target.name} exceeded the step cap of {cap}"
                )
            m = conj & candidates[i][1]
            if not viable(m):
                continue
            chosen.append(i)
            if depth + 1 == c:
                if m & forbidden == 0:
                    return True
            elif dfs(i + 1, depth + 1, m):
                return True
            chosen.pop()
        return False

    if dfs(0, 0, full):
        return [candidates[i][0] for i in chosen], steps
    return None, steps


# --- constant removal --------------------------------------------------------------


def _replace_constants(formula: Formula, zero: Arg, one: Arg) -> list[Clause]:
    return [
        Clause(
            c.relation,
            tuple(a if isinstance(a, str) else (zero if a == 0 else one) for a in c.args),
        )
        for c in formula.clauses
    ]


def _with_gadget(
    impl: Implementation, args: Sequence[Arg], taken: set[str], aux_out: list[str]
) -> list[Clause]:
    aux = [_fresh(f"a{len(aux_out) + i + 1}", taken) for i in range(impl.existential_suffix)]
    aux_out.extend(aux)
    return impl.instantiate(args, aux)


def remove_constants(
    formula: Formula,
    s: RelationSet | None = None,
    budget: Budget = Budget(),
    *,
    stand_ins_first: bool = True,
) -> ReductionOutput:
    """Rewrite a formula with constants into one without, preserving the lex-min model.

    Cases are tried in order: unit gadgets for both constants ("1.1"), a
    disequality gadget between two stand-ins ("1.2"), and forcing the 1
    stand-in with a 1-valid, not 0-valid relation ("2").

    ``stand_ins_first=False`` places the stand-ins of cases 1.2 and 2 after the
    originals instead; that ordering is incorrect and only exists so tests can
    demonstrate why the placement matters.
    """
    s = s or formula.relation_set
    if not formula.has_constants():
        raise ContractViolation("remove_constants needs a formula with constant arguments")
    taken = set(formula.vars.names)
    originals = formula.vars.names
    rel_set = formula.relation_set.union(s)

    one_gadget = find_implementation(TRUE_REL, s, budget, allow_constants=False)
    zero_gadget = find_implementation(FALSE_REL, s, budget, allow_constants=False) if one_gadget else None
    if one_gadget and zero_gadget:
        used = {a for c in formula.clauses for a in c.args if not isinstance(a, str)}
        # only constants that occur get a stand-in
        y0 = _fresh("y0", taken) if 0 in used else 0
        y1 = _fresh("y1", taken) if 1 in used else 1
        aux: list[str] = []
        clauses = _replace_constants(formula, y0, y1)
        stand_ins: tuple[str, ...] = ()
        guard = {}
        if 0 in used:
            clauses += _with_gadget(zero_gadget, [y0], taken, aux)
            stand_ins += (y0,)
            guard[y0] = 0
        if 1 in used:
            clauses += _with_gadget(one_gadget, [y1], taken, aux)
            stand_ins += (y1,)
            guard[y1] = 1
        order = VarOrder(originals + stand_ins + tuple(aux))
        out = Formula(order, tuple(clauses), rel_set)
        return ReductionOutput(out, originals, "1.1", guard)

    u = _fresh("u", taken)
    v = _fresh("v", taken)

    def placed(extra: Sequence[str]) -> VarOrder:
        if stand_ins_first:
            return VarOrder((u, v) + originals + tuple(extra))
        return VarOrder(originals + (u, v) + tuple(extra))

    neq_gadget = find_implementation(NEQ_REL, s, budget, allow_constants=False)
    if neq_gadget:
        aux = []
        clauses = _replace_constants(formula, u, v) + _with_gadget(neq_gadget, [u, v], taken, aux)
        out = Formula(placed(aux), tuple(clauses), rel_set)
        return ReductionOutput(out, originals, "1.2", {u: 0, v: 1})

    if s.taxonomy.one_valid:
        forcing = next(
            (r for r in s if has_property(r, "one_valid") and not has_property(r, "zero_valid")),
            None,
        )
        if forcing is not None:
            clauses = _replace_constants(formula, u, v) + [Clause(forcing, (v,) * forcing.arity)]
            out = Formula(placed(()), tuple(clauses), rel_set)
            return ReductionOutput(out, originals, "2", {u: 0, v: 1})

    raise ReductionError(
        "no constant-removal case applies within the gadget budget "
        f"(max {budget.max_clauses} clauses, {budget.max_aux} auxiliaries)"
    )


# --- 3-CNF translation -------------------------------------------------------------


def _clause_shape(clause: Iterable[int]) -> tuple[int, list[int]] | None:
    """Negation count and padded variable list, or None for a tautology."""
    lits = list(dict.fromkeys(clause))
    if any(-lit in lits for lit in lits):
        return None
    if not lits:
        raise ContractViolation("empty clauses are not supported")
    if len(lits) > 3 or any(lit == 0 for lit in lits):
        raise ContractViolation(f"not a 3-CNF clause: {clause}")
    lits.sort(key=lambda lit: lit > 0)
    while len(lits) < 3:
        lits.append(lits[-1])
    negations = sum(1 for lit in lits if lit < 0)
    return negations, [abs(lit) for lit in lits]


def to_s_formula(
    cnf3: Sequence[Sequence[int]],
    s: RelationSet,
    budget: Budget = Budget(),
    num_vars: int | None = None,
) -> ReductionOutput | None:
    """Translate a 3-CNF (DIMACS-style literals) into an S-formula with constants.

    Originals are x1..xn in index order; every clause gets its own auxiliaries,
    all placed after the originals. Returns None when a needed clause gadget is
    not found within the budget.
    """
    n = max([abs(lit) for c in cnf3 for lit in c] + [num_vars or 0])
    if n < 1:
        raise ContractViolation("the 3-CNF formula has no variables")
    originals = tuple(f"x{i}" for i in range(1, n + 1))
    taken = set(originals)
    shaped = [sh for sh in (_clause_shape(c) for c in cnf3) if sh is not None]
    gadgets: dict[int, Implementation] = {}
    for negations in sorted({neg for neg, _ in shaped}):
        impl = find_implementation(or_shape(negations), s, budget, allow_constants=True)
        if impl is None:
            return None
        gadgets[negations] = impl
    aux: list[str] = []
    clauses: list[Clause] = []
    for negations, variables in shaped:
        args = [originals[x - 1] for x in variables]
        clauses += _with_gadget(gadgets[negations], args, taken, aux)
    out = Formula(VarOrder(originals + tuple(aux)), tuple(clauses), s)
    return ReductionOutput(out, originals, "3cnf")


def cnf_models_lexmin(cnf3: Sequence[Sequence[int]], n: int) -> Assignment | None:
    """Brute-force lexicographically minimal model of a DIMACS-style CNF."""
    for bits in product((0, 1), repeat=n):
        if all(any((bits[abs(l) - 1] == 1) == (l > 0) for l in c) for c in cnf3):
            return Assignment(bits)
    return None


# --- parity gadget -----------------------------------------------------------------


def append_parity_gadget(
    formula: Formula,
    s: RelationSet | None = None,
    budget: Budget = Budget(),
    allow_constants: bool = True,
) -> ReductionOutput:
    """Add a new least significant variable z tied to the last variable by an equivalence gadget.

    Gadget auxiliaries sit between the originals and z, so z is the last
    variable of the output and its bit in the lex-min model equals the input's
    last bit.
    """
    s = s or formula.relation_set
    if formula.num_vars < 1:
        raise ContractViolation("the parity gadget needs at least one variable")
    impl = find_implementation(EQUIV_REL, s, budget, allow_constants=False)
    if impl is None and allow_constants:
        impl = find_implementation(EQUIV_REL, s, budget, allow_constants=True)
    if impl is None:
        raise ReductionError("no implementation of equivalence found within the gadget budget")
    originals = formula.vars.names
    taken = set(originals)
    z = _fresh("z", taken)
    aux: list[str] = []
    clauses = list(formula.clauses) + _with_gadget(impl, [originals[-1], z], taken, aux)
    out = Formula(VarOrder(originals + tuple(aux) + (z,)), tuple(clauses), formula.relation_set.union(s))
    return ReductionOutput(out, originals, "parity")


__all__ = [
    "Budget",
    "EQUIV_REL",
    "FALSE_REL",
    "Implementation",
    "NEQ_REL",
    "ReductionOutput",
    "TRUE_REL",
    "append_parity_gadget",
    "cnf_models_lexmin",
    "find_implementation",
    "or_shape",
    "remove_constants",
    "to_s_formula",
]
