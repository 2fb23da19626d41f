"""Inner search producing one high-coverage test for the current coverage state.

Two variants share the population machinery:

* ``evolve_fpa``: standard flower pollination; each pollen takes either a
  global or a local move depending on a fixed switch probability, and only
  strict improvements are kept.
* ``evolve_imfpa``: both moves run for every pollen every generation; a
  non-improving candidate is still accepted with a probability that shrinks
  with the fitness loss and with the number of successes the operator has
  accumulated so far.

The acceptance rule ``exp(-delta * (1 + s / S0))`` is an interpretation:
only its inputs (old fitness, new fitness, success count) are fixed by the
method, not its functional form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .coverage import CoverageTracker
from .model import Pollen
from .pollination import LevyConfig, discretize, levy_step, upper_bounds

ENGINES = ("fpa", "imfpa")


@dataclass(frozen=True)
class EngineConfig:
    population: int = 500
    max_generations: int = 500
    switch_p: float = 0.8
    accept_scale: float | None = None  # S0; None means "same as population"
    levy: LevyConfig = field(default_factory=LevyConfig)
    seed: int = 0
    persist_counters: bool = False

    def __post_init__(self):
        if self.population < 2:
            raise ValueError(f"population must be >= 2, got {self.population}")
        if self.max_generations < 1:
            raise ValueError(f"max_generations must be >= 1, got {self.max_generations}")
        if not 0.0 <= self.switch_p <= 1.0:
            raise ValueError(f"switch_p must lie in [0, 1], got {self.switch_p}")
        if self.accept_scale is not None and not self.accept_scale > 0:
            raise ValueError(f"accept_scale must be positive, got {self.accept_scale}")

    @property
    def s0(self) -> float:
        return float(self.population if self.accept_scale is None else self.accept_scale)


@dataclass
class OperatorStats:
    global_attempts: int = 0
    global_successes: int = 0
    local_attempts: int = 0
    local_successes: int = 0
    generations: int = 0

    @property
    def total_successes(self) -> int:
        return self.global_successes + self.local_successes

    @property
    def total_attempts(self) -> int:
        return self.global_attempts + self.local_attempts

    @property
    def global_pct(self) -> float:
        n = self.total_successes
        return 100.0 * self.global_successes / n if n else 0.0

    @property
    def local_pct(self) -> float:
        n = self.total_successes
        return 100.0 * self.local_successes / n if n else 0.0

    @property
    def global_attempt_fraction(self) -> float:
        n = self.total_attempts
        return self.global_attempts / n if n else 0.0

    def __add__(self, other: "OperatorStats") -> "OperatorStats":
        return OperatorStats(
            self.global_attempts + other.global_attempts,
            self.global_successes + other.global_successes,
            self.local_attempts + other.local_attempts,
            self.local_successes + other.local_successes,
            self.generations + other.generations,
        )


def acceptance_probability(f_old: int, f_new: int, success_count: int, cfg: EngineConfig) -> float:
    """Probability of keeping a candidate that is not strictly better.

    ``delta`` is the relative fitness loss; the probability is 1 for equal
    fitness and decays with both the loss and the operator's success count.
    """
    return _kernels.accept_p(f_old, f_new, success_count, cfg.s0)


def _initial_population(tracker: CoverageTracker, cfg: EngineConfig, rng):
    model = tracker.model
    cards = np.asarray(model.cardinalities, dtype=np.float64)
    pos = np.minimum(rng.random((cfg.population, model.k)) * cards, upper_bounds(model))
    tst = np.clip(np.floor(pos), 0, cards - 1).astype(np.int64)
    fit = tracker.fitness_many(tst)
    return pos, tst, fit


def _evolve(tracker: CoverageTracker, cfg: EngineConfig, rng, variant: str, initial_successes):
    if tracker.remaining <= 0:
        raise ValueError("nothing left to cover")
    model = tracker.model
    pop, k = cfg.population, model.k
    target = min(tracker.n_combinations, tracker.remaining)
    upper = upper_bounds(model)
    hi = np.asarray(model.cardinalities, dtype=np.int64) - 1
    levy = cfg.levy

    pos, tst, fit = _initial_population(tracker, cfg, rng)
    b = int(np.argmax(fit))
    gbest, gbest_fit = pos[b].copy(), int(fit[b])

    counters = np.zeros(4, dtype=np.int64)
    base = np.asarray(initial_successes, dtype=np.int64)
    gens = 0
    while gens < cfg.max_generations and gbest_fit < target:
        if variant == "imfpa":
            steps = levy_step(levy, (pop, k), rng)
            acc_g = rng.random(pop)
            jk = rng.integers(0, pop, (pop, 2))
            rho = rng.random(pop)
            acc_l = rng.random(pop)
            _kernels.imfpa_sweep(
                pos, tst, fit, gbest, steps, acc_g, jk, rho, acc_l,
                upper, hi, tracker.cols, tracker.strides, tracker.offsets, tracker.flags,
                counters, base, cfg.s0,
            )
        else:
            switch = rng.random(pop)
            steps = levy_step(levy, (pop, k), rng)
            jk = rng.integers(0, pop, (pop, 2))
            rho = rng.random(pop)
            _kernels.fpa_sweep(
                pos, tst, fit, gbest, switch, cfg.switch_p, steps, jk, rho,
                upper, hi, tracker.cols, tracker.strides, tracker.offsets, tracker.flags,
                counters,
            )
        gens += 1
        b = int(np.argmax(fit))
        if fit[b] > gbest_fit:
            gbest, gbest_fit = pos[b].copy(), int(fit[b])

    best = Pollen(gbest, discretize(gbest, model), gbest_fit)
    stats = OperatorStats(*(int(c) for c in counters), generations=gens)
    return best, stats


def evolve_imfpa(tracker: CoverageTracker, cfg: EngineConfig, rng, initial_successes=(0, 0)):
    """Search with sequential global + local moves and dynamic acceptance.

    ``initial_successes`` seeds the (global, local) success counters used by
    the acceptance rule; the returned stats count only this call.
    """
    return _evolve(tracker, cfg, rng, "imfpa", initial_successes)


def evolve_fpa(tracker: CoverageTracker, cfg: EngineConfig, rng):
    """Standard FPA: switch-probability operator choice, greedy acceptance."""
    return _evolve(tracker, cfg, rng, "fpa", (0, 0))


def evolve(engine: str, tracker: CoverageTracker, cfg: EngineConfig, rng, initial_successes=(0, 0)):
    if engine == "imfpa":
        return evolve_imfpa(tracker, cfg, rng, initial_successes)
    if engine == "fpa":
        return evolve_fpa(tracker, cfg, rng)
    raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
