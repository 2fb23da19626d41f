"""Brute-force coverage oracle.

Deliberately shares nothing with :mod:`imfpa.coverage`: tuples are
enumerated with nested iteration and compared value by value, so a bug in
the ranked flag arrays cannot hide itself here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .coverage import InteractionTuple


@dataclass(frozen=True)
class Verdict:
    missing: tuple[InteractionTuple, ...] = field(default=())

    @property
    def complete(self) -> bool:
        return not self.missing

    def __bool__(self):
        return self.complete


def _rows(tests):
    tests = getattr(tests, "tests", tests)
    return [tuple(int(x) for x in t) for t in tests]


def oracle_verify(model, suite) -> Verdict:
    """Return every tuple no test in ``suite`` covers (empty when complete)."""
    rows = _rows(suite)
    cards = model.cardinalities
    missing = []
    for cols in combinations(range(model.k), model.strength):
        seen = {tuple(row[c] for c in cols) for row in rows}
        for assignment in product(*(range(cards[c]) for c in cols)):
            if assignment not in seen:
                missing.append(InteractionTuple(cols, assignment))
    return Verdict(tuple(missing))


def oracle_fitness(model, covered_tests, candidate) -> int:
    """Count tuples of ``candidate`` that no test in ``covered_tests`` covers."""
    rows = _rows(covered_tests)
    cand = tuple(int(x) for x in candidate)
    count = 0
    for cols in combinations(range(model.k), model.strength):
        hit = False
        for row in rows:
            if all(row[c] == cand[c] for c in cols):
                hit = True
                break
        if not hit:
            count += 1
    return count
