"""System models, test cases and the ``v^k t=N`` model grammar."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from itertools import groupby
from pathlib import Path

import numpy as np

from .errors import (
    CardinalityError,
    MalformedTermError,
    ParameterCountError,
    StrengthError,
)

_TERM = re.compile(r"^(\d+)\^(\d+)$")
_STRENGTH = re.compile(r"^t=(\d+)$")


@dataclass(frozen=True)
class SystemModel:
    """A system under test: one cardinality per parameter plus strength ``t``."""

    cardinalities: tuple[int, ...]
    strength: int

    def __post_init__(self):
        object.__setattr__(self, "cardinalities", tuple(int(v) for v in self.cardinalities))
        if not self.cardinalities:
            raise ParameterCountError("model needs at least one parameter")
        bad = [v for v in self.cardinalities if v < 2]
        if bad:
            raise CardinalityError(f"cardinality {bad[0]} < 2")
        if self.strength < 2:
            raise StrengthError(f"strength t={self.strength} < 2")
        if self.strength > self.k:
            raise StrengthError(
                f"strength t={self.strength} exceeds parameter count {self.k}"
            )

    @property
    def k(self) -> int:
        return len(self.cardinalities)

    @property
    def exhaustive_size(self) -> int:
        return math.prod(self.cardinalities)

    def validate_test(self, values) -> None:
        if len(values) != self.k:
            raise ValueError(f"test has {len(values)} values, model has {self.k} parameters")
        for i, (x, v) in enumerate(zip(values, self.cardinalities)):
            if not 0 <= x < v:
                raise ValueError(f"value {x} out of range for parameter {i} (cardinality {v})")

    def __str__(self):
        return render_model(self)


@dataclass(frozen=True)
class TestCase:
    """One row of a suite: a value index per parameter."""

    __test__ = False  # keep pytest from collecting this class

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(x) for x in self.values))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int64)


@dataclass
class Pollen:
    """A candidate test: continuous position, its discretization and fitness."""

    position: np.ndarray
    test: TestCase
    fitness: int | None = field(default=None)


def parse_model(spec: str) -> SystemModel:
    """Parse ``"3^4 t=2"`` style text; terms may mix cardinalities (``"3^2 5^1 t=2"``)."""
    cards: list[int] = []
    strength = None
    for term in spec.split():
        m = _TERM.match(term)
        if m:
            v, k = int(m.group(1)), int(m.group(2))
            if v < 2:
                raise CardinalityError(f"term {term!r}: value count {v} < 2", term)
            if k < 1:
                raise ParameterCountError(f"term {term!r}: parameter count {k} < 1", term)
            cards.extend([v] * k)
            continue
        m = _STRENGTH.match(term)
        if m:
            if strength is not None:
                raise MalformedTermError(f"term {term!r}: strength given twice", term)
            strength = int(m.group(1))
            continue
        raise MalformedTermError(f"malformed term {term!r}", term)
    if not cards:
        raise ParameterCountError(f"no parameter terms in {spec!r}")
    if strength is None:
        raise StrengthError(f"missing strength clause 't=N' in {spec!r}")
    if strength < 2:
        raise StrengthError(f"term 't={strength}': strength < 2", f"t={strength}")
    if strength > len(cards):
        raise StrengthError(
            f"term 't={strength}': strength exceeds parameter count {len(cards)}",
            f"t={strength}",
        )
    return SystemModel(tuple(cards), strength)


def parse_model_file(path) -> list[SystemModel]:
    """One model per line; ``#`` starts a comment, blank lines are skipped."""
    models = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            models.append(parse_model(line))
    return models


def render_model(model: SystemModel) -> str:
    terms = [f"{v}^{len(list(g))}" for v, g in groupby(model.cardinalities)]
    return " ".join(terms + [f"t={model.strength}"])


def random_test(model: SystemModel, rng: np.random.Generator) -> Pollen:
    """Uniform position in the box ``[0, v_i)``; fitness is left for the caller."""
    from .pollination import clamp, discretize

    cards = np.asarray(model.cardinalities, dtype=np.float64)
    position = clamp(rng.random(model.k) * cards, model)
    return Pollen(position, discretize(position, model))
