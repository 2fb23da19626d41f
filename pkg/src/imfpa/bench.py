"""Published comparison table and a harness that reruns systems against it."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, replace

from .engine import EngineConfig, OperatorStats
from .generator import best_of_runs
from .model import SystemModel, parse_model

STRATEGIES = (
    "IPOG", "ITCH", "Jenny", "PICT", "TVG", "GTWay", "SA", "GA",
    "ACA", "PSO", "HSS", "HHH", "CS", "FPA", "imFPA",
)

# name, x^y, t, then one size per entry of STRATEGIES (None = NA)
_NA = None
_TABLE1 = (
    ("S1", "3^4", 2, (12, _NA, 10, 13, 12, 10, 9, 9, 9, 9, 9, 9, 9, 9, 9)),
    ("S2", "3^13", 2, (20, _NA, 22, 20, 20, 19, 16, 17, 17, 17, 18, _NA, _NA, 18, 18)),
    ("S3", "10^10", 2, (176, _NA, 177, 170, 189, 160, _NA, 157, 159, 170, 155, _NA, _NA, 153, 151)),
    ("S4", "5^5", 4, (908, 837, 810, 773, 731, 625, _NA, _NA, _NA, 779, 751, 746, 776, 784, 790)),
    ("S5", "5^6", 4, (1239, 1074, 1072, 1092, 1027, 625, _NA, _NA, _NA, 1001, 990, 967, 991, 988, 988)),
    ("S6", "5^7", 4, (1349, 1248, 1279, 1320, 1216, 1125, _NA, _NA, _NA, 1209, 1186, 1151, 1200, 1164, 1165)),
    ("S7", "2^10", 4, (49, 58, 39, 43, 40, 46, _NA, _NA, _NA, 34, 37, 36, 28, 36, 36)),
    ("S8", "3^10", 4, (241, 336, 221, 231, 228, 224, _NA, _NA, _NA, 213, 211, 207, 211, 211, 205)),
    ("S9", "4^10", 4, (707, 704, 703, 742, 782, 621, _NA, _NA, _NA, 685, 691, 668, 698, 661, 657)),
    ("S10", "2^10", 2, (10, 6, 10, _NA, 10, _NA, _NA, _NA, _NA, 8, 7, 8, 8, 8, 8)),
    ("S11", "2^10", 3, (19, 18, 18, _NA, 17, _NA, _NA, _NA, _NA, 17, 16, 16, 16, 16, 16)),
    ("S12", "2^10", 4, (49, 58, 39, _NA, 41, _NA, _NA, _NA, _NA, 37, 37, 36, 36, 35, 37)),
    ("S13", "2^10", 5, (128, _NA, 87, _NA, 84, _NA, _NA, _NA, _NA, 82, 81, 79, 79, 81, 82)),
    ("S14", "2^10", 6, (352, _NA, 169, _NA, 168, _NA, _NA, _NA, _NA, 158, 158, 153, 157, 158, 153)),
)

DEFAULT_SYSTEMS = ("S1", "S10", "S11")
# t=4 systems with 5-valued parameters take hours at the published budget
SLOW_SYSTEMS = ("S4", "S5", "S6")


@dataclass(frozen=True)
class BenchFixture:
    name: str
    spec: str
    strength: int
    published: dict

    @property
    def model(self) -> SystemModel:
        return parse_model(f"{self.spec} t={self.strength}")


FIXTURES = {
    name: BenchFixture(name, spec, t, dict(zip(STRATEGIES, sizes)))
    for name, spec, t, sizes in _TABLE1
}

# Power and sleep settings dialog: four settings with 16 choices each.
# Reference sizes quoted alongside it: 65,536 exhaustive, 310 pairwise, 5300 3-way.
POWER_SETTINGS = BenchFixture("POWER", "16^4", 2, {})
POWER_SETTINGS_SIZES = {"exhaustive": 65536, 2: 310, 3: 5300}


def binomial_bound(p: float, n: int, sigmas: float = 3.0) -> float:
    """Half-width of a ``sigmas``-sigma interval for a proportion over ``n`` trials."""
    return sigmas * math.sqrt(p * (1 - p) / n) if n else math.inf


def run_system(fixture: BenchFixture, engine: str, cfg: EngineConfig, runs: int, jobs: int = 1) -> dict:
    best, summary = best_of_runs(fixture.model, engine, cfg, runs, cfg.seed, jobs=jobs)
    pooled = sum(summary.stats, OperatorStats())
    with_successes = [s for s in summary.stats if s.total_successes]
    mean_global = statistics.fmean(s.global_pct for s in with_successes) if with_successes else 0.0
    mean_local = statistics.fmean(s.local_pct for s in with_successes) if with_successes else 0.0
    return {
        "engine": engine,
        "best": summary.min,
        "mean": summary.mean,
        "max": summary.max,
        "stddev": summary.stddev,
        "sizes": list(summary.sizes),
        "best_seed": best.seed,
        "global_attempts": pooled.global_attempts,
        "local_attempts": pooled.local_attempts,
        "global_attempt_fraction": pooled.global_attempt_fraction,
        "global_attempt_bound_3sigma": (
            binomial_bound(cfg.switch_p, pooled.total_attempts) if engine == "fpa" else None
        ),
        "mean_global_pct": mean_global,
        "mean_local_pct": mean_local,
    }


def run_bench(
    systems=DEFAULT_SYSTEMS,
    engines=("imfpa",),
    cfg: EngineConfig | None = None,
    runs: int = 30,
    jobs: int = 1,
) -> dict:
    """Rerun each named fixture with each engine; wall times are left out."""
    cfg = cfg or EngineConfig()
    rows = []
    for name in systems:
        fx = FIXTURES[name]
        rows.append({
            "system": name,
            "model": f"{fx.spec} t={fx.strength}",
            "published": dict(fx.published),
            "results": [run_system(fx, e, cfg, runs, jobs) for e in engines],
        })
    return {
        "schema_version": 1,
        "runs": runs,
        "population": cfg.population,
        "max_generations": cfg.max_generations,
        "switch_p": cfg.switch_p,
        "seed": cfg.seed,
        "systems": rows,
    }


def format_bench(doc: dict) -> str:
    lines = []
    for row in doc["systems"]:
        pub = row["published"]
        lines.append(f"{row['system']}  {row['model']}")
        lines.append("  published: " + "  ".join(
            f"{k}={'NA' if v is None else v}" for k, v in pub.items()
        ))
        for r in row["results"]:
            ref = pub.get("imFPA" if r["engine"] == "imfpa" else "FPA")
            lines.append(
                f"  {r['engine']:>6}: best={r['best']} mean={r['mean']:.2f} "
                f"max={r['max']} (published {ref})  "
                f"global%={r['mean_global_pct']:.1f} local%={r['mean_local_pct']:.1f}  "
                f"global attempts={100 * r['global_attempt_fraction']:.2f}%"
            )
    return "\n".join(lines) + "\n"
