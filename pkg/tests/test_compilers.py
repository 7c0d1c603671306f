import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import build, models
from lexsat.classifier import all_relations, has_property
from lexsat.compilers import (
    KINDS,
    CnfClause,
    CompiledForm,
    LinearEquation,
    check_shape,
    compile_formula,
    compile_relation,
)
from lexsat.core import Relation, RelationSet, VarOrder
from lexsat.errors import ContractViolation, PreconditionError
from lexsat.generate import GenSpec, generate
from lexsat.presets import IMPL, R13, UNIT0, XOR

PROPERTY = {"two_cnf": "bijunctive", "horn_cnf": "horn", "anti_horn_cnf": "anti_horn", "linear_system": "affine"}
PRESET_FOR = {"two_cnf": "two_cnf", "horn_cnf": "horn", "anti_horn_cnf": "anti_horn", "linear_system": "affine"}


def cl(*lits):
    return CnfClause(frozenset(lits))


class TestTypes:
    def test_tautology_rejected(self):
        with pytest.raises(ContractViolation):
            cl((0, 1), (0, 0))
        assert CnfClause.make([(0, 1), (0, 0)]) is None

    def test_inconsistent_equation(self):
        assert LinearEquation(frozenset(), 1).inconsistent
        assert not LinearEquation(frozenset({0}), 1).inconsistent

    def test_shape_enforced(self):
        with pytest.raises(ContractViolation):
            CompiledForm("horn_cnf", (cl((0, 1), (1, 1)),), VarOrder(("a", "b")))
        with pytest.raises(ContractViolation):
            CompiledForm("two_cnf", (cl((0, 1), (1, 1), (2, 0)),), VarOrder(("a", "b", "c")))


class TestCompileRelation:
    def test_impl_horn(self):
        out = compile_relation(IMPL, "horn_cnf")
        assert cl((0, 0), (1, 1)) in out

    def test_xor_linear(self):
        assert compile_relation(XOR, "linear_system") == (LinearEquation(frozenset({0, 1}), 1),)

    def test_unit0_two_cnf(self):
        assert compile_relation(UNIT0, "two_cnf") == (cl((0, 0)),)

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            compile_relation(R13, "two_cnf")
        with pytest.raises(PreconditionError):
            compile_relation(IMPL, "linear_system")

    @pytest.mark.parametrize("kind", KINDS)
    def test_exact_on_all_small_relations(self, kind):
        for k in (1, 2, 3):
            for r in all_relations(k):
                if not has_property(r, PROPERTY[kind]):
                    continue
                for minimize in (True, False):
                    out = compile_relation(r, kind, minimize=minimize)
                    check_shape(kind, out)
                    defined = {t for t in product((0, 1), repeat=k) if all(i.satisfied_by(t) for i in out)}
                    assert defined == set(r.tuples)

    @pytest.mark.parametrize("kind", ["two_cnf", "horn_cnf", "anti_horn_cnf"])
    def test_adding_a_tuple_never_adds_clauses(self, kind):
        rng = random.Random(3)
        space = list(product((0, 1), repeat=3))
        checked = 0
        for r in all_relations(3):
            if not has_property(r, PROPERTY[kind]):
                continue
            for t in rng.sample(space, 3):
                bigger = Relation("B", 3, r.tuples | {t})
                if not has_property(bigger, PROPERTY[kind]):
                    continue
                small = set(compile_relation(r, kind, minimize=False))
                large = set(compile_relation(bigger, kind, minimize=False))
                assert large <= small
                # the minimized form is implied by the smaller relation's form
                for c in compile_relation(bigger, kind):
                    assert all(c.satisfied_by(x) for x in r.tuples)
                checked += 1
        assert checked > 50


class TestCompileFormula:
    def test_impl_unit0(self):
        s = RelationSet.of(IMPL, UNIT0)
        f = build(s, ["x1", "x2"], [("IMPL", ["x1", "x2"]), ("UNIT0", ["x2"])])
        assert set(compile_formula(f, "horn_cnf").clauses) == {cl((0, 0), (1, 1)), cl((1, 0))}

    def test_xor_chain(self):
        s = RelationSet.of(XOR)
        f = build(s, ["x1", "x2", "x3"], [("XOR", ["x1", "x2"]), ("XOR", ["x2", "x3"])])
        assert set(compile_formula(f, "linear_system").equations) == {
            LinearEquation(frozenset({0, 1}), 1),
            LinearEquation(frozenset({1, 2}), 1),
        }

    def test_constant_folded(self):
        s = RelationSet.of(XOR)
        f = build(s, ["x1"], [("XOR", ["x1", 1])])
        assert compile_formula(f, "linear_system").equations == (LinearEquation(frozenset({0}), 0),)

    def test_precondition(self):
        f = build(RelationSet.of(R13), ["x1", "x2", "x3"], [("R13", ["x1", "x2", "x3"])])
        with pytest.raises(PreconditionError):
            compile_formula(f, "horn_cnf")

    @settings(max_examples=120, deadline=None)
    @given(
        kind=st.sampled_from(KINDS),
        n=st.integers(1, 12),
        m=st.integers(1, 16),
        const_prob=st.sampled_from([0.0, 0.2, 0.5]),
        seed=st.integers(0, 100_000),
    )
    def test_sound_and_complete(self, kind, n, m, const_prob, seed):
        f = generate(GenSpec(PRESET_FOR[kind], n, m, const_prob, seed))
        form = compile_formula(f, kind)
        check_shape(kind, form.items)
        compiled = [b for b in product((0, 1), repeat=n) if form.satisfied_by(b)]
        assert compiled == models(f)

    @pytest.mark.parametrize("kind", KINDS)
    def test_sound_and_complete_at_twelve_variables(self, kind):
        for seed in range(8):
            f = generate(GenSpec(PRESET_FOR[kind], 12, 6 + seed, 0.15, seed))
            form = compile_formula(f, kind)
            assert [b for b in product((0, 1), repeat=12) if form.satisfied_by(b)] == models(f)
