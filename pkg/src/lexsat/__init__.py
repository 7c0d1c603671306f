"""Lexicographically optimal satisfying assignments of generalized S-formulae."""

from lexsat.classifier import DispatchVerdict, Taxonomy, classify_set, dispatch_verdict, has_property
from lexsat.core import (
    Assignment,
    Clause,
    Formula,
    Relation,
    RelationSet,
    VarOrder,
    evaluate,
    lex_compare,
    project,
    relation_of,
    substitute,
)
from lexsat.solvers import brute_force_lex_opt, decide_sat, dispatch, lex_opt, odd_opt, sat_nontrivial

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "Clause",
    "DispatchVerdict",
    "Formula",
    "Relation",
    "RelationSet",
    "Taxonomy",
    "VarOrder",
    "brute_force_lex_opt",
    "classify_set",
    "decide_sat",
    "dispatch",
    "dispatch_verdict",
    "evaluate",
    "has_property",
    "lex_compare",
    "lex_opt",
    "odd_opt",
    "project",
    "relation_of",
    "sat_nontrivial",
    "substitute",
]
