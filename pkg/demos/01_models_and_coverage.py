"""Models, interaction tuples and coverage bookkeeping.

Run with ``python demos/01_models_and_coverage.py``.
"""
from imfpa import TestCase, mark_covered, new_tracker, oracle_verify, parse_model, tuple_count

# %% A model is a list of cardinalities plus an interaction strength.
s1 = parse_model("3^4 t=2")
print(s1, "-> exhaustive", s1.exhaustive_size, "tests,", tuple_count(s1), "pairs to cover")

# Mixed systems are written as several terms.
mixed = parse_model("3^2 5^1 2^3 t=3")
print(mixed.cardinalities, tuple_count(mixed))

# %% The four-setting, sixteen-choice power dialog: exhaustive testing needs 65,536 runs.
power = parse_model("16^4 t=2")
print("power dialog:", power.exhaustive_size, "exhaustive,", tuple_count(power), "pairs")

# %% Fitness is the number of still-uncovered tuples a test would cover.
tracker = new_tracker(s1)
x = TestCase((0, 1, 2, 0))
print("fresh fitness", tracker.fitness(x))
print("newly covered", mark_covered(tracker, x), "remaining", tracker.remaining)
print("fitness again", tracker.fitness(x))

# %% The nine rows of the ternary orthogonal array cover every pair.
oa = [(a, b, (a + b) % 3, (a + 2 * b) % 3) for a in range(3) for b in range(3)]
tracker = new_tracker(s1)
for row in oa:
    tracker.mark_covered(row)
print("OA(9, 3^4) remaining:", tracker.remaining, "| oracle:", oracle_verify(s1, oa).complete)
print("drop one row -> missing", len(oracle_verify(s1, oa[1:]).missing))
