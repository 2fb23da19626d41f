"""Lévy-flight sampling, the two pollination moves and the position-to-test map."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Pollen, SystemModel, TestCase


@dataclass(frozen=True)
class LevyConfig:
    beta: float = 1.5
    scale: float = 0.01

    def __post_init__(self):
        if not 1.0 < self.beta <= 2.0:
            raise ValueError(f"beta must lie in (1, 2], got {self.beta}")
        if not self.scale > 0:
            raise ValueError(f"scale must be positive, got {self.scale}")

    @property
    def sigma_u(self) -> float:
        return mantegna_sigma(self.beta)


def mantegna_sigma(beta: float) -> float:
    """Standard deviation of the numerator draw in Mantegna's algorithm."""
    num = math.gamma(1 + beta) * math.sin(math.pi * beta / 2)
    den = math.gamma((1 + beta) / 2) * beta * 2 ** ((beta - 1) / 2)
    return (num / den) ** (1 / beta)


def levy_step(cfg: LevyConfig, dims, rng: np.random.Generator) -> np.ndarray:
    """Independent Lévy-distributed steps, ``scale * u / |v|**(1/beta)``.

    ``dims`` may be an int or a shape tuple; all ``u`` draws are taken
    before all ``v`` draws.
    """
    u = rng.normal(0.0, cfg.sigma_u, dims)
    v = rng.normal(0.0, 1.0, dims)
    return cfg.scale * u / np.abs(v) ** (1.0 / cfg.beta)


def upper_bounds(model: SystemModel) -> np.ndarray:
    """Largest float strictly below each cardinality (the box is half-open)."""
    return np.nextafter(np.asarray(model.cardinalities, dtype=np.float64), 0.0)


def clamp(position: np.ndarray, model: SystemModel) -> np.ndarray:
    return np.clip(position, 0.0, upper_bounds(model))


def discretize(position, model: SystemModel) -> TestCase:
    """Floor each coordinate and clamp it to ``[0, v_i - 1]``."""
    hi = np.asarray(model.cardinalities, dtype=np.int64) - 1
    cells = np.clip(np.floor(np.asarray(position, dtype=np.float64)), 0, hi)
    return TestCase(cells.astype(np.int64))


def global_pollinate(
    x: Pollen,
    gbest: Pollen,
    cfg: LevyConfig,
    model: SystemModel,
    rng: np.random.Generator,
    step: np.ndarray | None = None,
) -> Pollen:
    """Lévy move toward ``gbest``; ``step`` overrides the Lévy draw."""
    if step is None:
        step = levy_step(cfg, model.k, rng)
    diff = gbest.position - x.position
    # a zero difference stays put even for an infinite step
    pos = clamp(np.where(diff == 0.0, x.position, x.position + step * diff), model)
    return Pollen(pos, discretize(pos, model))


def local_pollinate(
    x: Pollen,
    xj: Pollen,
    xk: Pollen,
    model: SystemModel,
    rng: np.random.Generator,
    rho: float | None = None,
) -> Pollen:
    """Move along ``xj - xk`` scaled by one uniform ``rho`` for all coordinates."""
    if rho is None:
        rho = rng.random()
    pos = clamp(x.position + rho * (xj.position - xk.position), model)
    return Pollen(pos, discretize(pos, model))
