"""Build complete suites and check them with the brute-force oracle."""
from imfpa import EngineConfig, best_of_runs, generate, oracle_verify, parse_model
from imfpa.serialize import report_to_json, suite_to_csv

cfg = EngineConfig(population=100, max_generations=100, seed=3)

# %% One run.
model = parse_model("3^4 t=2")
report = generate(model, "imfpa", cfg)
print(suite_to_csv(report.suite))
print("size", report.suite.size, "complete:", oracle_verify(model, report.suite).complete)

# %% Best of several seeds.
best, summary = best_of_runs(parse_model("2^10 t=2"), "imfpa", cfg, runs=5)
print("sizes", summary.sizes, "best", summary.min, "mean", summary.mean)
print(report_to_json(best, summary)[:400], "...")
