"""Lexicographically optimal models: decision procedures, greedy bit fixing, dispatch."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Mapping

from lexsat.classifier import CLOSURE_PROPERTIES
from lexsat.compilers import compile_formula
from lexsat.core import Assignment, Formula, fix_variables
from lexsat.errors import ContractViolation, DispatchError
from lexsat.solvers.affine import EchelonSystem, gf2_satisfiable
from lexsat.solvers.generic import backtrack_sat, brute_force_models
from lexsat.solvers.propagation import UnitPropagator, clause_lits, lit_of
from lexsat.solvers.twosat import two_sat_satisfiable

METHODS = ("two_cnf", "horn", "anti_horn", "affine", "generic")
_COMPILED_KIND = {
    "two_cnf": "two_cnf",
    "horn": "horn_cnf",
    "anti_horn": "anti_horn_cnf",
    "affine": "linear_system",
}
# Priority used by dispatch when several closure properties hold.
_PROPERTY_METHOD = {
    "horn": "horn",
    "anti_horn": "anti_horn",
    "bijunctive": "two_cnf",
    "affine": "affine",
}
POLY_METHODS = frozenset(_COMPILED_KIND)


@dataclass
class SolveStats:
    decision_calls: int = 0
    elapsed: float = 0.0


@dataclass
class SolveResult:
    status: str
    assignment: Assignment | None
    method: str
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def sat(self) -> bool:
        return self.status == "sat"

    def __str__(self) -> str:
        return str(self.assignment) if self.sat else "UNSAT"


PartialFix = Mapping[str, int]


def _check_direction(direction: str) -> None:
    if direction not in ("min", "max"):
        raise ContractViolation(f"direction must be 'min' or 'max', got {direction!r}")


def _check_method(method: str) -> None:
    if method not in METHODS:
        raise ContractViolation(f"unknown method {method!r}; expected one of {METHODS}")


def _linear_rows(form) -> list[tuple[int, int]]:
    return [(sum(1 << v for v in eq.variables), eq.rhs) for eq in form.equations]


def decide_sat(formula: Formula, fix: PartialFix | None = None, method: str = "generic") -> bool:
    """Is there a model of ``formula`` extending ``fix``?

    The fix is applied as constant substitution, so the closure class of the
    formula is preserved and the class-specific procedure stays applicable.
    """
    _check_method(method)
    fix = dict(fix or {})
    if method == "generic":
        pos = formula.vars.position
        for v in fix:
            if v not in pos:
                raise ContractViolation(f"cannot fix undeclared variable {v!r}")
        return backtrack_sat(formula, {pos[v]: b for v, b in fix.items()}) is not None
    restricted = fix_variables(formula, fix) if fix else formula
    form = compile_formula(restricted, _COMPILED_KIND[method])
    n = formula.num_vars
    if method == "affine":
        return gf2_satisfiable(_linear_rows(form))
    lits = [clause_lits(c.literals) for c in form.clauses]
    if method == "two_cnf":
        return two_sat_satisfiable(n, lits)
    # Horn / anti-Horn: unit propagation from the empty assignment is complete.
    return UnitPropagator(n, lits).ok


class _PropagationEngine:
    def __init__(self, formula: Formula, method: str):
        form = compile_formula(formula, _COMPILED_KIND[method])
        lits = [clause_lits(c.literals) for c in form.clauses]
        n = formula.num_vars
        if method == "two_cnf":
            self.sat = two_sat_satisfiable(n, lits)
            self.prop = UnitPropagator(n, lits) if self.sat else None
        else:
            self.prop = UnitPropagator(n, lits)
            self.sat = self.prop.ok

    def try_fix(self, var: int, bit: int) -> bool:
        return self.prop.try_assign(lit_of(var, bit))

    def commit(self, var: int, bit: int) -> None:
        if not self.prop.try_assign(lit_of(var, bit)):
            raise AssertionError("complementary fix of a satisfiable formula failed")


class _AffineEngine:
    def __init__(self, formula: Formula):
        form = compile_formula(formula, "linear_system")
        self.system = EchelonSystem()
        self.sat = self.system.extend(_linear_rows(form))
        self.ones = 0

    def try_fix(self, var: int, bit: int) -> bool:
        forced = self.system.forced_value(var, self.ones)
        if forced is not None and forced != bit:
            return False
        self.commit(var, bit)
        return True

    def commit(self, var: int, bit: int) -> None:
        if bit:
            self.ones |= 1 << var


class _RestartEngine:
    """Answers every query with a fresh ``decide_sat`` call on the accumulated fix."""

    def __init__(self, formula: Formula, method: str):
        self.formula = formula
        self.method = method
        self.fix: dict[str, int] = {}
        self.sat = decide_sat(formula, {}, method)

    def try_fix(self, var: int, bit: int) -> bool:
        name = self.formula.vars[var]
        if decide_sat(self.formula, {**self.fix, name: bit}, self.method):
            self.fix[name] = bit
            return True
        return False

    def commit(self, var: int, bit: int) -> None:
        self.fix[self.formula.vars[var]] = bit


def lex_opt(
    formula: Formula, direction: str = "min", method: str = "generic", *, incremental: bool = True
) -> SolveResult:
    """Greedy bit fixing from the most significant variable.

    Makes one satisfiability query for the whole formula and then one per
    variable, trying 0 first for ``min`` and 1 first for ``max``. With
    ``incremental`` the poly methods keep solver state between queries instead
    of recompiling; the answers are the same.
    """
    _check_direction(direction)
    _check_method(method)
    start = time.perf_counter()
    if not incremental or method == "generic":
        engine = _RestartEngine(formula, method)
    elif method == "affine":
        engine = _AffineEngine(formula)
    else:
        engine = _PropagationEngine(formula, method)
    stats = SolveStats(decision_calls=1)
    if not engine.sat:
        stats.elapsed = time.perf_counter() - start
        return SolveResult("unsat", None, method, stats)
    first = 0 if direction == "min" else 1
    bits = []
    for var in range(formula.num_vars):
        stats.decision_calls += 1
        if engine.try_fix(var, first):
            bits.append(first)
        else:
            engine.commit(var, 1 - first)
            bits.append(1 - first)
    stats.elapsed = time.perf_counter() - start
    return SolveResult("sat", Assignment(tuple(bits)), method, stats)


def select_method(formula: Formula, allow_constants: bool, direction: str) -> str:
    """Method dispatch would use; 'zero_valid'/'one_valid' denote the trivial answers."""
    tax = formula.relation_set.taxonomy
    if not allow_constants:
        if direction == "min" and tax.zero_valid:
            return "zero_valid"
        if direction == "max" and tax.one_valid:
            return "one_valid"
    for prop in CLOSURE_PROPERTIES:
        if getattr(tax, prop):
            return _PROPERTY_METHOD[prop]
    return "generic"


def dispatch(
    formula: Formula,
    allow_constants: bool | None = None,
    direction: str = "min",
    fallback: bool = True,
    *,
    incremental: bool = True,
) -> SolveResult:
    """Solve with the polynomial method the relation set admits, else backtracking.

    ``allow_constants`` defaults to whether the formula actually contains
    constant arguments.
    """
    _check_direction(direction)
    if allow_constants is None:
        allow_constants = formula.has_constants()
    elif not allow_constants and formula.has_constants():
        raise ContractViolation("formula has constant arguments but allow_constants is False")
    method = select_method(formula, allow_constants, direction)
    if method in ("zero_valid", "one_valid"):
        bit = 0 if method == "zero_valid" else 1
        return SolveResult("sat", Assignment((bit,) * formula.num_vars), method, SolveStats())
    if method == "generic" and not fallback:
        failed = list(CLOSURE_PROPERTIES)
        if not allow_constants:
            failed.insert(0, "zero_valid" if direction == "min" else "one_valid")
        raise DispatchError(
            f"relation set is not {', '.join(failed)}; lex-{direction} is hard and fallback is forbidden"
        )
    return lex_opt(formula, direction, method, incremental=incremental)


def brute_force_lex_opt(formula: Formula, direction: str = "min") -> SolveResult:
    """Reference semantics: first model in lexicographic enumeration order."""
    _check_direction(direction)
    start = time.perf_counter()
    first = next(brute_force_models(formula, direction), None)
    stats = SolveStats(decision_calls=0, elapsed=time.perf_counter() - start)
    if first is None:
        return SolveResult("unsat", None, "brute_force", stats)
    return SolveResult("sat", Assignment(first), "brute_force", stats)


def _constant_method(formula: Formula) -> str:
    tax = formula.relation_set.taxonomy
    for prop in CLOSURE_PROPERTIES:
        if getattr(tax, prop):
            return _PROPERTY_METHOD[prop]
    return "generic"


def sat_nontrivial(formula: Formula, method: str | None = None) -> bool:
    """Is there a model other than all-zeros and all-ones?

    Such a model has some variable at 1 and another at 0, so it suffices to ask
    one fixed-pair question per ordered pair of variables.
    """
    method = method or _constant_method(formula)
    names = formula.vars.names
    if len(names) < 2:
        # every assignment of at most one variable is constant
        return False
    for a in names:
        for b in names:
            if a != b and decide_sat(formula, {a: 1, b: 0}, method):
                return True
    return False


def odd_opt(
    formula: Formula,
    direction: str = "min",
    allow_constants: bool | None = None,
    fallback: bool = True,
) -> bool:
    """Does the least significant variable get 1 in the optimal model? False if unsat."""
    result = dispatch(formula, allow_constants, direction, fallback)
    if not result.sat or len(result.assignment) == 0:
        return False
    return result.assignment[-1] == 1


def minimality_certificate(formula: Formula, assignment: Assignment, method: str = "generic") -> bool:
    """Check that no model is lexicographically smaller than ``assignment``.

    For every position holding 1, the prefix before it plus a 0 there must be
    unsatisfiable.
    """
    names = formula.vars.names
    for i, bit in enumerate(assignment):
        if bit == 1:
            fix = {names[j]: assignment[j] for j in range(i)}
            fix[names[i]] = 0
            if decide_sat(formula, fix, method):
                return False
    return True


__all__ = [
    "METHODS",
    "POLY_METHODS",
    "SolveResult",
    "SolveStats",
    "brute_force_lex_opt",
    "decide_sat",
    "dispatch",
    "lex_opt",
    "minimality_certificate",
    "odd_opt",
    "sat_nontrivial",
    "select_method",
]
