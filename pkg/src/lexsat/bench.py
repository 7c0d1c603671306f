"""Benchmark sweep over generated instances, reported as CSV."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from lexsat.generate import GenSpec, generate
from lexsat.solvers import dispatch

CSV_HEADER = ("n", "m", "class", "method", "millis", "decision_calls")


@dataclass(frozen=True)
class BenchRow:
    n: int
    m: int
    klass: str
    method: str
    millis: float
    decision_calls: int
    status: str

    def as_csv(self) -> tuple:
        return (self.n, self.m, self.klass, self.method, f"{self.millis:.3f}", self.decision_calls)


def class_label(spec: GenSpec) -> str:
    holding = spec.relation_set().taxonomy.holding()
    return "+".join(holding) if holding else "none"


def run_one(job: tuple[GenSpec, str, bool]) -> BenchRow:
    spec, direction, fallback = job
    formula = generate(spec)
    result = dispatch(formula, direction=direction, fallback=fallback)
    return BenchRow(
        spec.n,
        spec.m,
        class_label(spec),
        result.method,
        result.stats.elapsed * 1000.0,
        result.stats.decision_calls,
        result.status,
    )


def sweep(
    specs: Sequence[GenSpec], direction: str = "min", fallback: bool = True, jobs: int = 1
) -> list[BenchRow]:
    """Solve every spec; rows come back in spec order regardless of ``jobs``."""
    work = [(spec, direction, fallback) for spec in specs]
    if jobs <= 1:
        return [run_one(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_one, work))


def to_csv(rows: Iterable[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.as_csv())
    return buf.getvalue()
