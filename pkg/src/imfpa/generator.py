"""One-test-at-a-time construction of a complete covering suite."""

from __future__ import annotations

import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .coverage import DEFAULT_MEMORY_BUDGET, new_tracker
from .engine import ENGINES, EngineConfig, OperatorStats, evolve
from .errors import GenerationError, RunError, StallError
from .model import SystemModel, TestCase

DEFAULT_STALL_LIMIT = 50


@dataclass
class TestSuite:
    __test__ = False

    model: SystemModel
    tests: list[TestCase] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.tests)

    def as_array(self) -> np.ndarray:
        return np.array([t.values for t in self.tests], dtype=np.int64).reshape(-1, self.model.k)


@dataclass
class RunReport:
    suite: TestSuite
    engine: str
    config: EngineConfig
    seed: int
    wall_time: float
    per_test_stats: list[OperatorStats]

    @property
    def totals(self) -> OperatorStats:
        return sum(self.per_test_stats, OperatorStats())


@dataclass(frozen=True)
class RunSummary:
    sizes: tuple[int, ...]
    best_index: int
    stats: tuple[OperatorStats, ...] = ()  # per-run totals

    @property
    def min(self) -> int:
        return min(self.sizes)

    @property
    def max(self) -> int:
        return max(self.sizes)

    @property
    def mean(self) -> float:
        return statistics.fmean(self.sizes)

    @property
    def stddev(self) -> float:
        return statistics.stdev(self.sizes) if len(self.sizes) > 1 else 0.0


def generate(
    model: SystemModel,
    engine: str,
    cfg: EngineConfig,
    *,
    stall_limit: int = DEFAULT_STALL_LIMIT,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> RunReport:
    """Evolve, append and mark tests until every tuple is covered.

    A best test that covers nothing new is discarded; its operator stats
    are folded into the next appended test.  ``stall_limit`` consecutive
    discards raise :class:`StallError`.
    """
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    start = time.perf_counter()
    tracker = new_tracker(model, memory_budget)
    rng = np.random.default_rng(cfg.seed)
    suite = TestSuite(model)
    per_test: list[OperatorStats] = []
    pending = OperatorStats()
    successes = (0, 0)
    stalls = 0
    while tracker.remaining > 0:
        base = successes if cfg.persist_counters else (0, 0)
        best, stats = evolve(engine, tracker, cfg, rng, base)
        successes = (successes[0] + stats.global_successes, successes[1] + stats.local_successes)
        pending = pending + stats
        if best.fitness == 0:
            stalls += 1
            if stalls >= stall_limit:
                raise StallError(
                    f"{stalls} consecutive searches covered nothing new "
                    f"({tracker.remaining} tuples left)"
                )
            continue
        stalls = 0
        tracker.mark_covered(best.test)
        suite.tests.append(best.test)
        per_test.append(pending)
        pending = OperatorStats()
    return RunReport(suite, engine, cfg, cfg.seed, time.perf_counter() - start, per_test)


def _run_one(args):
    model, engine, cfg, index, kwargs = args
    try:
        return generate(model, engine, cfg, **kwargs)
    except GenerationError as exc:
        raise RunError(index, cfg.seed, exc) from exc


def best_of_runs(
    model: SystemModel,
    engine: str,
    cfg: EngineConfig,
    runs: int,
    base_seed: int | None = None,
    *,
    jobs: int = 1,
    **kwargs,
) -> tuple[RunReport, RunSummary]:
    """Run ``generate`` with seeds ``base_seed + i`` and keep the smallest suite.

    Ties go to the lowest run index.  ``base_seed`` defaults to ``cfg.seed``.
    """
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    if base_seed is None:
        base_seed = cfg.seed
    tasks = [(model, engine, replace(cfg, seed=base_seed + i), i, kwargs) for i in range(runs)]
    if jobs > 1 and runs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_one, tasks))
    else:
        reports = [_run_one(t) for t in tasks]
    sizes = tuple(r.suite.size for r in reports)
    best = sizes.index(min(sizes))
    return reports[best], RunSummary(sizes, best, tuple(r.totals for r in reports))
