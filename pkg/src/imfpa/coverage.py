"""Enumeration and incremental tracking of t-way interaction tuples.

Every column combination owns a contiguous block of flags in one flat
``uint8`` array, indexed by the mixed-radix rank of the value assignment
(last column varies fastest).  A flag of 1 means the tuple is still
uncovered.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

import numpy as np

from .errors import CapacityError
from .model import SystemModel, TestCase

DEFAULT_MEMORY_BUDGET = 1 << 30  # bytes of tuple flags


@dataclass(frozen=True)
class InteractionTuple:
    columns: tuple[int, ...]
    assignment: tuple[int, ...]

    def matches(self, values) -> bool:
        return all(values[c] == a for c, a in zip(self.columns, self.assignment))


def tuple_count(model: SystemModel) -> int:
    """Number of t-way tuples: sum over column combinations of the product of cardinalities.

    Computed as the t-th elementary symmetric polynomial of the
    cardinalities, so the combinations are never enumerated.
    """
    t = model.strength
    e = [1] + [0] * t
    for v in model.cardinalities:
        for j in range(t, 0, -1):
            e[j] += e[j - 1] * v
    return e[t]


class CoverageTracker:
    """Live set of uncovered tuples for one model."""

    def __init__(self, model: SystemModel, memory_budget: int = DEFAULT_MEMORY_BUDGET):
        total = tuple_count(model)
        if total > memory_budget:
            raise CapacityError(
                f"{total} tuples for {model} exceed the memory budget of {memory_budget} bytes"
            )
        t = model.strength
        cards = model.cardinalities
        cols = np.array(list(combinations(range(model.k), t)), dtype=np.int64).reshape(-1, t)
        strides = np.ones_like(cols)
        for j in range(t - 2, -1, -1):
            strides[:, j] = strides[:, j + 1] * np.asarray(cards)[cols[:, j + 1]]
        sizes = strides[:, 0] * np.asarray(cards)[cols[:, 0]]
        offsets = np.zeros(len(cols), dtype=np.int64)
        np.cumsum(sizes[:-1], out=offsets[1:])

        self.model = model
        self.cols = cols
        self.strides = strides
        self.offsets = offsets
        self.sizes = sizes
        self.flags = np.ones(total, dtype=np.uint8)
        self.remaining = total

    @property
    def total(self) -> int:
        return len(self.flags)

    @property
    def n_combinations(self) -> int:
        return len(self.cols)

    def _indices(self, tests: np.ndarray) -> np.ndarray:
        # (n, k) -> (n, n_combinations) flat flag indices
        return (tests[:, self.cols] * self.strides).sum(axis=2) + self.offsets

    def fitness(self, test) -> int:
        """Number of uncovered tuples ``test`` would cover. Read-only."""
        idx = self._indices(_as_rows(test))[0]
        return int(self.flags[idx].sum())

    def fitness_many(self, tests) -> np.ndarray:
        return self.flags[self._indices(_as_rows(tests))].sum(axis=1, dtype=np.int64)

    def mark_covered(self, test) -> int:
        """Flag every tuple ``test`` covers; return how many were new."""
        idx = self._indices(_as_rows(test))[0]
        newly = int(self.flags[idx].sum())
        self.flags[idx] = 0
        self.remaining -= newly
        return newly

    def is_covered(self, tup: InteractionTuple) -> bool:
        c = self._combination_index(tup.columns)
        rank = int(np.dot(tup.assignment, self.strides[c]))
        return self.flags[self.offsets[c] + rank] == 0

    def _combination_index(self, columns) -> int:
        hit = np.flatnonzero((self.cols == np.asarray(columns)).all(axis=1))
        if len(hit) != 1:
            raise ValueError(f"{columns} is not a column combination of {self.model}")
        return int(hit[0])

    def uncovered(self) -> Iterator[InteractionTuple]:
        for flat in np.flatnonzero(self.flags):
            c = int(np.searchsorted(self.offsets, flat, side="right") - 1)
            rank = int(flat - self.offsets[c])
            assignment = []
            for s in self.strides[c]:
                assignment.append(rank // int(s))
                rank %= int(s)
            yield InteractionTuple(tuple(int(x) for x in self.cols[c]), tuple(assignment))

    def copy(self) -> "CoverageTracker":
        other = object.__new__(CoverageTracker)
        other.__dict__.update(self.__dict__)
        other.flags = self.flags.copy()
        return other


def _as_rows(tests) -> np.ndarray:
    if isinstance(tests, TestCase):
        return tests.as_array()[None, :]
    if isinstance(tests, (list, tuple)) and tests and isinstance(tests[0], TestCase):
        tests = [t.values for t in tests]
    arr = np.asarray(tests, dtype=np.int64)
    return arr[None, :] if arr.ndim == 1 else arr


def new_tracker(model: SystemModel, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> CoverageTracker:
    return CoverageTracker(model, memory_budget)


def fitness(tracker: CoverageTracker, test) -> int:
    return tracker.fitness(test)


def mark_covered(tracker: CoverageTracker, test) -> int:
    return tracker.mark_covered(test)
