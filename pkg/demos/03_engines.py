"""One inner search with each engine, and how imFPA accepts worse moves."""
import numpy as np

from imfpa import EngineConfig, acceptance_probability, evolve_fpa, evolve_imfpa, new_tracker, parse_model

cfg = EngineConfig(population=100, max_generations=100)

# %% Acceptance probability falls with the fitness loss and with accumulated successes.
for s in (0, 50, 100, 400):
    row = [acceptance_probability(10, f, s, cfg) for f in (10, 8, 5, 0)]
    print(f"successes={s:>3}:", " ".join(f"{p:.3f}" for p in row))

# %% Partially cover S11 and search for the best next test.
model = parse_model("2^10 t=3")
tracker = new_tracker(model)
rng = np.random.default_rng(1)
for _ in range(6):
    tracker.mark_covered(rng.integers(0, 2, model.k))
print("remaining tuples", tracker.remaining)

for name, evolve in (("fpa", evolve_fpa), ("imfpa", evolve_imfpa)):
    best, stats = evolve(tracker, cfg, np.random.default_rng(7))
    print(f"{name:>5}: best covers {best.fitness} new tuples after {stats.generations} generations; "
          f"global successes {stats.global_pct:.1f}%, global attempts {100 * stats.global_attempt_fraction:.1f}%")
