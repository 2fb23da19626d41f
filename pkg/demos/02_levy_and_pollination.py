"""Lévy steps and the two pollination moves on a single pollen."""
import numpy as np

from imfpa import LevyConfig, global_pollinate, levy_step, local_pollinate, parse_model, random_test
from imfpa.pollination import mantegna_sigma

rng = np.random.default_rng(0)

# %% Mantegna's sigma for the default stability index.
print("sigma_u(1.5) =", mantegna_sigma(1.5))

# %% Heavy tails: a few steps are far larger than the bulk.
steps = levy_step(LevyConfig(), 100_000, rng)
for q in (50, 90, 99, 99.9):
    print(f"{q:>5}th percentile |step| = {np.percentile(np.abs(steps), q):.4f}")

# %% Moves act on continuous positions; the test is the floor of each coordinate.
model = parse_model("5^4 t=2")
x, gbest, a, b = (random_test(model, rng) for _ in range(4))
print("x     ", np.round(x.position, 3), x.test.values)
print("gbest ", np.round(gbest.position, 3), gbest.test.values)
g = global_pollinate(x, gbest, LevyConfig(scale=1.0), model, rng)
print("global", np.round(g.position, 3), g.test.values)
loc = local_pollinate(x, a, b, model, rng)
print("local ", np.round(loc.position, 3), loc.test.values)
