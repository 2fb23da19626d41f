"""Covering-array generation with the flower pollination algorithm and imFPA."""

from .coverage import CoverageTracker, InteractionTuple, fitness, mark_covered, new_tracker, tuple_count
from .engine import (
    EngineConfig,
    OperatorStats,
    acceptance_probability,
    evolve_fpa,
    evolve_imfpa,
)
from .errors import (
    CapacityError,
    GenerationError,
    ModelError,
    RunError,
    StallError,
)
from .generator import RunReport, RunSummary, TestSuite, best_of_runs, generate
from .model import Pollen, SystemModel, TestCase, parse_model, parse_model_file, random_test, render_model
from .pollination import LevyConfig, discretize, global_pollinate, levy_step, local_pollinate
from .verify import Verdict, oracle_fitness, oracle_verify

__version__ = "0.1.0"
