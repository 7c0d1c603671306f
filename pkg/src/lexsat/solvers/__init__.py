"""Satisfiability deciders and lexicographic optimization."""

from lexsat.solvers.lexopt import (
    METHODS,
    POLY_METHODS,
    SolveResult,
    SolveStats,
    brute_force_lex_opt,
    decide_sat,
    dispatch,
    lex_opt,
    minimality_certificate,
    odd_opt,
    sat_nontrivial,
    select_method,
)

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
