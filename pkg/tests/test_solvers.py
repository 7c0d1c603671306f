import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import build, lexmax, lexmin, models
from lexsat.classifier import CLOSURE_PROPERTIES, classify
from lexsat.core import Assignment, Relation, RelationSet, evaluate, fix_variables
from lexsat.errors import ContractViolation, DispatchError, PreconditionError, ResourceLimitError
from lexsat.generate import GenSpec, generate
from lexsat.presets import AND3, IMPL, R13, R_HS, UNIT0, XOR, preset
from lexsat.solvers import (
    brute_force_lex_opt,
    decide_sat,
    dispatch,
    lex_opt,
    minimality_certificate,
    odd_opt,
    sat_nontrivial,
)
from lexsat.solvers.affine import EchelonSystem, gf2_satisfiable
from lexsat.solvers.generic import backtrack_sat, brute_force_models
from lexsat.solvers.propagation import UnitPropagator, lit_of
from lexsat.solvers.twosat import implication_graph, strongly_connected_components, two_sat_satisfiable

S_XOR = RelationSet.of(XOR)
S_R13 = RelationSet.of(R13)
S_RHS = RelationSet.of(R_HS)
PRESETS_BY_METHOD = {
    "horn": ["impl", "horn"],
    "anti_horn": ["impl", "anti_horn"],
    "two_cnf": ["two_cnf", "impl", "xor"],
    "affine": ["xor", "affine"],
    "generic": ["r13", "r_hs", "nae", "cnf3", "impl", "affine"],
}
ALL_PRESETS = ["impl", "horn", "anti_horn", "two_cnf", "xor", "affine", "r13", "r_hs", "nae", "cnf3"]


def r13_formula():
    return build(S_R13, ["x1", "x2", "x3"], [("R13", ["x1", "x2", "x3"])])


def xor_chain():
    return build(S_XOR, ["x1", "x2", "x3"], [("XOR", ["x1", "x2"]), ("XOR", ["x2", "x3"])])


def xor_self():
    return build(S_XOR, ["x1"], [("XOR", ["x1", "x1"])])


def expected(f, direction):
    got = lexmin(f) if direction == "min" else lexmax(f)
    return "UNSAT" if got is None else "".join(map(str, got))


class TestBuildingBlocks:
    def test_unit_propagator_conflict_and_undo(self):
        # (x0 -> x1), (x1 -> not x2), unit x0
        up = UnitPropagator(3, [[lit_of(0, 0), lit_of(1, 1)], [lit_of(1, 0), lit_of(2, 0)]])
        assert up.ok
        mark = len(up.trail)
        assert up.try_assign(lit_of(0, 1)) and up.lit_is_true(lit_of(2, 0))
        up.undo(mark)
        assert not up.lit_is_true(lit_of(2, 0))
        up2 = UnitPropagator(3, [[lit_of(0, 0), lit_of(1, 1)], [lit_of(1, 0), lit_of(2, 0)], [lit_of(0, 1)]])
        assert up2.ok and up2.lit_is_true(lit_of(2, 0))
        assert not up2.try_assign(lit_of(2, 1))
        assert up2.try_assign(lit_of(2, 0))

    def test_empty_clause_is_unsat(self):
        assert not UnitPropagator(1, [[]]).ok

    def test_scc_and_two_sat(self):
        # x0 xor x1 as 2-CNF is satisfiable; adding x0 == x1 is not
        xor = [[lit_of(0, 1), lit_of(1, 1)], [lit_of(0, 0), lit_of(1, 0)]]
        eq = [[lit_of(0, 0), lit_of(1, 1)], [lit_of(0, 1), lit_of(1, 0)]]
        assert two_sat_satisfiable(2, xor)
        assert not two_sat_satisfiable(2, xor + eq)
        comp = strongly_connected_components(implication_graph(2, xor + eq))
        assert comp[lit_of(0, 1)] == comp[lit_of(0, 0)]

    def test_scc_deep_chain_is_iterative(self):
        n = 50_000
        chain = [[lit_of(i, 0), lit_of(i + 1, 1)] for i in range(n - 1)]
        assert two_sat_satisfiable(n, chain)

    def test_echelon(self):
        e = EchelonSystem()
        assert e.add(0b011, 1) and e.add(0b110, 1)
        assert e.rank == 2
        assert not e.add(0b101, 1)  # sum of the two rows has rhs 0
        assert gf2_satisfiable([(0b11, 1), (0b10, 0)]) and not gf2_satisfiable([(0, 1)])

    def test_backtrack_matches_models(self):
        rng = random.Random(5)
        for _ in range(200):
            f = generate(GenSpec(rng.choice(ALL_PRESETS), rng.randint(1, 9), rng.randint(1, 14), 0.2, rng.randrange(10**6)))
            got = backtrack_sat(f)
            assert (got is None) == (not models(f))
            if got is not None:
                assert evaluate(f, got)

    def test_brute_force_bound(self):
        f = build(S_XOR, [f"x{i}" for i in range(30)], [])
        with pytest.raises(ResourceLimitError):
            next(brute_force_models(f))


class TestDecideSat:
    def test_horn(self):
        s = RelationSet.of(IMPL, UNIT0)
        f = build(s, ["x1", "x2"], [("IMPL", ["x1", "x2"]), ("UNIT0", ["x2"])])
        assert decide_sat(f, None, "horn")

    def test_affine_contradiction(self):
        assert not decide_sat(xor_self(), None, "affine")

    def test_affine_with_fix(self):
        assert decide_sat(xor_chain(), {"x1": 0}, "affine")
        assert not decide_sat(xor_chain(), {"x1": 0, "x3": 1}, "affine")

    def test_mismatch(self):
        with pytest.raises(PreconditionError):
            decide_sat(r13_formula(), None, "horn")

    def test_unknown_method(self):
        with pytest.raises(ContractViolation):
            decide_sat(xor_chain(), None, "magic")

    @pytest.mark.parametrize("method", list(PRESETS_BY_METHOD))
    def test_agrees_with_enumeration(self, method):
        rng = random.Random(hash(method) & 0xFFFF)
        for _ in range(150):
            name = rng.choice(PRESETS_BY_METHOD[method])
            f = generate(GenSpec(name, rng.randint(1, 8), rng.randint(1, 12), 0.2, rng.randrange(10**6)))
            fix = {v: rng.randrange(2) for v in f.vars.names if rng.random() < 0.3}
            want = any(evaluate(f, b) for b in product((0, 1), repeat=f.num_vars)
                       if all(b[f.vars.index(v)] == x for v, x in fix.items()))
            assert decide_sat(f, fix, method) == want


class TestLexOpt:
    def test_r13(self):
        assert str(lex_opt(r13_formula(), "min", "generic")) == "001"
        assert str(lex_opt(r13_formula(), "max", "generic")) == "100"

    def test_rhs(self):
        f = build(S_RHS, ["x1", "x2", "x3"], [("R_HS", ["x1", "x2", "x3"])])
        assert str(lex_opt(f, "min")) == "010"

    @pytest.mark.parametrize("direction", ["min", "max"])
    def test_unsat(self, direction):
        r = lex_opt(xor_self(), direction, "affine")
        assert not r.sat and r.assignment is None and str(r) == "UNSAT"
        assert r.stats.decision_calls == 1

    def test_zero_clauses(self):
        f = build(S_XOR, ["x1", "x2", "x3"], [])
        assert str(lex_opt(f, "min", "affine")) == "000"
        assert str(lex_opt(f, "max", "affine")) == "111"

    @pytest.mark.parametrize("method", list(PRESETS_BY_METHOD))
    @pytest.mark.parametrize("incremental", [True, False])
    def test_every_method_matches_enumeration(self, method, incremental):
        rng = random.Random(len(method) * 31 + incremental)
        for _ in range(120):
            name = rng.choice(PRESETS_BY_METHOD[method])
            f = generate(GenSpec(name, rng.randint(1, 10), rng.randint(1, 16), 0.15, rng.randrange(10**6)))
            for d in ("min", "max"):
                r = lex_opt(f, d, method, incremental=incremental)
                assert str(r) == expected(f, d)
                assert r.stats.decision_calls == (f.num_vars + 1 if r.sat else 1)
                if r.sat:
                    assert evaluate(f, r.assignment)

    def test_minimality_certificate(self):
        rng = random.Random(17)
        for _ in range(100):
            f = generate(GenSpec(rng.choice(ALL_PRESETS), rng.randint(1, 9), rng.randint(1, 12), 0.1, rng.randrange(10**6)))
            r = dispatch(f)
            if r.sat:
                assert minimality_certificate(f, r.assignment)
                # a non-optimal model is rejected
                later = [m for m in models(f) if m != tuple(r.assignment)]
                if later:
                    assert not minimality_certificate(f, Assignment(later[-1]))

    @settings(max_examples=80, deadline=None)
    @given(name=st.sampled_from(ALL_PRESETS), n=st.integers(1, 9), m=st.integers(1, 12),
           seed=st.integers(0, 10**6), cp=st.sampled_from([0.0, 0.3]))
    def test_duality(self, name, n, m, seed, cp):
        f = generate(GenSpec(name, n, m, cp, seed))
        comp = {r.name: r.complemented() for r in f.relation_set}
        s2 = RelationSet(tuple(comp.values()))
        g = build(s2, f.vars.names, [(c.relation.name, [a if isinstance(a, str) else 1 - a for a in c.args])
                                     for c in f.clauses])
        mx = dispatch(f, direction="max")
        mn = dispatch(g, direction="min")
        assert mx.sat == mn.sat
        if mx.sat:
            assert mx.assignment == mn.assignment.complemented()


class TestClassPreservation:
    @pytest.mark.parametrize("name", ["horn", "anti_horn", "two_cnf", "affine"])
    def test_fixing_keeps_properties(self, name):
        rng = random.Random(23)
        for rel in preset(name):
            props = [p for p in CLOSURE_PROPERTIES if getattr(classify(rel), p)]
            for _ in range(10):
                fix = {i: rng.randrange(2) for i in range(rel.arity) if rng.random() < 0.5}
                if len(fix) == rel.arity:
                    continue
                keep = [i for i in range(rel.arity) if i not in fix]
                restricted = Relation(
                    "Rr", len(keep),
                    frozenset(tuple(t[i] for i in keep) for t in rel.tuples if all(t[i] == b for i, b in fix.items())),
                )
                for p in props:
                    assert getattr(classify(restricted), p), (rel, fix, p)

    def test_fixed_formula_still_poly_solvable(self):
        f = generate(GenSpec("horn", 8, 14, 0.0, 4, planted=True))
        g = fix_variables(f, {"x1": 0})
        assert str(lex_opt(g, "min", "horn")) == expected(g, "min")


class TestDispatch:
    def test_zero_valid_shortcut(self):
        f = build(RelationSet.of(IMPL), ["x1", "x2"], [("IMPL", ["x1", "x2"])])
        r = dispatch(f)
        assert str(r) == "00" and r.stats.decision_calls == 0 and r.method == "zero_valid"

    def test_one_valid_shortcut_for_max(self):
        f = build(S_RHS, ["x1", "x2", "x3"], [("R_HS", ["x1", "x2", "x3"])])
        r = dispatch(f, direction="max")
        assert str(r) == "111" and r.method == "one_valid"

    def test_mixed_validity_min_is_generic(self):
        f = build(S_RHS, ["x1", "x2", "x3"], [("R_HS", ["x1", "x2", "x3"])])
        r = dispatch(f, direction="min")
        assert r.method == "generic" and str(r) == "010"

    def test_xor_chain(self):
        r = dispatch(xor_chain())
        assert str(r) == "010"
        # XOR is bijunctive as well as affine; priority order picks two_cnf first
        assert r.method == "two_cnf"
        assert str(lex_opt(xor_chain(), "min", "affine")) == "010"

    def test_fallback_forbidden(self):
        f = build(S_RHS, ["x1", "x2", "x3"], [("R_HS", ["x1", "x2", "x3"])])
        with pytest.raises(DispatchError, match="zero_valid"):
            dispatch(f, fallback=False)

    def test_constants_need_permission(self):
        f = build(S_XOR, ["x1"], [("XOR", ["x1", 1])])
        with pytest.raises(ContractViolation):
            dispatch(f, allow_constants=False)
        assert str(dispatch(f)) == "0"

    def test_constants_disable_trivial_answer(self):
        f = build(RelationSet.of(IMPL), ["x1"], [("IMPL", [1, "x1"])])
        assert str(dispatch(f)) == "1"

    @settings(max_examples=150, deadline=None)
    @given(name=st.sampled_from(ALL_PRESETS), n=st.integers(1, 10), m=st.integers(1, 16),
           seed=st.integers(0, 10**6), cp=st.sampled_from([0.0, 0.2]), d=st.sampled_from(["min", "max"]))
    def test_oracle_equivalence(self, name, n, m, seed, cp, d):
        f = generate(GenSpec(name, n, m, cp, seed))
        r = dispatch(f, direction=d)
        assert str(r) == str(brute_force_lex_opt(f, d)) == expected(f, d)


class TestBruteForce:
    def test_r13(self):
        assert str(brute_force_lex_opt(r13_formula())) == "001"

    def test_zero_clause_max(self):
        assert str(brute_force_lex_opt(build(S_XOR, ["a", "b"], []), "max")) == "11"

    def test_bad_direction(self):
        with pytest.raises(ContractViolation):
            brute_force_lex_opt(r13_formula(), "sideways")


class TestSatNontrivial:
    def test_r13(self):
        assert sat_nontrivial(r13_formula())

    def test_rhs(self):
        assert sat_nontrivial(build(S_RHS, ["x1", "x2", "x3"], [("R_HS", ["x1", "x2", "x3"])]))

    def test_and3(self):
        assert not sat_nontrivial(build(RelationSet.of(AND3), ["x1", "x2", "x3"], [("AND3", ["x1", "x2", "x3"])]))

    def test_single_variable(self):
        assert not sat_nontrivial(build(S_XOR, ["x1"], []))

    def test_agrees_with_enumeration(self):
        rng = random.Random(29)
        for _ in range(150):
            f = generate(GenSpec(rng.choice(ALL_PRESETS), rng.randint(1, 7), rng.randint(1, 10), 0.2, rng.randrange(10**6)))
            want = any(0 < sum(b) < f.num_vars for b in models(f))
            assert sat_nontrivial(f) == want


class TestOddOpt:
    def test_r13(self):
        assert odd_opt(r13_formula(), "min")

    def test_rhs(self):
        assert not odd_opt(build(S_RHS, ["x1", "x2", "x3"], [("R_HS", ["x1", "x2", "x3"])]), "min")

    def test_unsat_is_false(self):
        assert not odd_opt(xor_self(), "min") and not odd_opt(xor_self(), "max")

    def test_definitional(self):
        rng = random.Random(31)
        for _ in range(150):
            f = generate(GenSpec(rng.choice(ALL_PRESETS), rng.randint(1, 9), rng.randint(1, 12), 0.2, rng.randrange(10**6)))
            for d in ("min", "max"):
                r = dispatch(f, direction=d)
                assert odd_opt(f, d) == (r.sat and r.assignment[-1] == 1)


def test_result_assignment_always_models_formula():
    rng = random.Random(37)
    for _ in range(200):
        f = generate(GenSpec(rng.choice(ALL_PRESETS), rng.randint(1, 12), rng.randint(1, 20), 0.1, rng.randrange(10**6)))
        r = dispatch(f)
        if r.sat:
            assert len(r.assignment) == f.num_vars and evaluate(f, r.assignment)
        text = str(r)
        assert text == "UNSAT" if not r.sat else set(text) <= {"0", "1"} and len(text) == f.num_vars
