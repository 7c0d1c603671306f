"""Seeded random S-formula generation."""

from __future__ import annotations

import random
from dataclasses import dataclass

from lexsat.core import Arg, Clause, Formula, RelationSet, VarOrder
from lexsat.errors import ContractViolation
from lexsat.presets import preset

PLANT_ATTEMPTS = 10_000


@dataclass(frozen=True)
class GenSpec:
    relations: RelationSet | str
    n: int
    m: int
    const_prob: float = 0.0
    seed: int = 0
    planted: bool = False

    def relation_set(self) -> RelationSet:
        if isinstance(self.relations, str):
            return preset(self.relations)
        return self.relations


def generate(spec: GenSpec) -> Formula:
    """m clauses, each a uniform relation on uniform variables (with replacement).

    Each argument becomes a uniform random constant with probability
    ``const_prob``. With ``planted`` a hidden assignment is drawn first and
    clauses it violates are redrawn, so the instance is satisfiable.
    """
    if spec.n < 1 or spec.m < 1:
        raise ContractViolation("n and m must both be at least 1")
    if not 0.0 <= spec.const_prob <= 1.0:
        raise ContractViolation("const_prob must lie in [0, 1]")
    rel_set = spec.relation_set()
    rels = rel_set.relations
    rng = random.Random(spec.seed)
    names = tuple(f"x{i}" for i in range(1, spec.n + 1))
    hidden = [rng.randrange(2) for _ in range(spec.n)] if spec.planted else None

    clauses = []
    for _ in range(spec.m):
        for _ in range(PLANT_ATTEMPTS):
            rel = rels[rng.randrange(len(rels))]
            args: list[Arg] = []
            for _ in range(rel.arity):
                if spec.const_prob and rng.random() < spec.const_prob:
                    args.append(rng.randrange(2))
                else:
                    args.append(names[rng.randrange(spec.n)])
            if hidden is None:
                break
            row = tuple(hidden[int(a[1:]) - 1] if isinstance(a, str) else a for a in args)
            if row in rel.tuples:
                break
        else:
            raise ContractViolation("could not draw a clause satisfied by the planted assignment")
        clauses.append(Clause(rel, tuple(args)))
    return Formula(VarOrder(names), tuple(clauses), rel_set)
