"""Exit criteria: each test records one PASS/FAIL line shown in the terminal summary."""

import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from imfpa.bench import FIXTURES, binomial_bound
from imfpa.coverage import new_tracker
from imfpa.engine import EngineConfig, acceptance_probability
from imfpa.generator import best_of_runs, generate
from imfpa.model import SystemModel
from imfpa.pollination import LevyConfig, levy_step, mantegna_sigma
from imfpa.verify import oracle_fitness, oracle_verify

FULL = EngineConfig(population=500, max_generations=500)


def test_c1_completeness_over_random_triples(criterion):
    rng = np.random.default_rng(20240601)
    start = time.perf_counter()
    failures = []
    for i in range(200):
        k = int(rng.integers(2, 9))
        t = int(rng.integers(2, min(3, k) + 1))
        cards = tuple(int(v) for v in rng.integers(2, 5, k))
        model = SystemModel(cards, t)
        engine = ("fpa", "imfpa")[int(rng.integers(0, 2))]
        seed = int(rng.integers(0, 2**31))
        report = generate(model, engine, EngineConfig(population=50, max_generations=50, seed=seed))
        if not oracle_verify(model, report.suite).complete:
            failures.append((model, engine, seed))
    elapsed = time.perf_counter() - start
    criterion("C1 completeness", not failures and elapsed < 300,
              f"200 triples, {len(failures)} incomplete, {elapsed:.1f}s (< 300s)")


def test_c2_s1_best_of_30(criterion):
    start = time.perf_counter()
    best, summary = best_of_runs(FIXTURES["S1"].model, "imfpa", FULL, 30, 0)
    elapsed = time.perf_counter() - start
    ok = summary.min <= 10 and elapsed < 600 and oracle_verify(best.suite.model, best.suite).complete
    criterion("C2 S1 3^4 t=2", ok,
              f"best-of-30 {summary.min} (published 9, accept <= 10), "
              f"mean {summary.mean:.2f}, {elapsed:.1f}s")


def test_c3_s10_s11_best_of_30(criterion):
    start = time.perf_counter()
    _, s10 = best_of_runs(FIXTURES["S10"].model, "imfpa", FULL, 30, 0)
    _, s11 = best_of_runs(FIXTURES["S11"].model, "imfpa", FULL, 30, 0)
    elapsed = time.perf_counter() - start
    criterion("C3 S10 2^10 t=2 / S11 2^10 t=3", s10.min <= 9 and s11.min <= 18 and elapsed < 1200,
              f"S10 best {s10.min} (published 8, accept <= 9), "
              f"S11 best {s11.min} (published 16, accept <= 18), {elapsed:.1f}s")


def test_c4_s8_reduced_budget(criterion):
    model = FIXTURES["S8"].model
    start = time.perf_counter()
    report = generate(model, "imfpa", EngineConfig(population=100, max_generations=100))
    elapsed = time.perf_counter() - start
    complete = oracle_verify(model, report.suite).complete
    criterion("C4 S8 3^10 t=4 at pop=100 gens=100", complete and elapsed < 900,
              f"size {report.suite.size} (published 205 at full budget), "
              f"complete={complete}, {elapsed:.1f}s")


def test_c5_operator_split(criterion):
    cfg = EngineConfig(population=500, max_generations=500, switch_p=0.8)
    lines, ok = [], True
    for name in ("S1", "S10"):
        model = FIXTURES[name].model
        fpa = generate(model, "fpa", cfg).totals
        n = fpa.total_attempts
        frac = fpa.global_attempts / n
        within = abs(frac - 0.8) <= binomial_bound(0.8, n)
        im = generate(model, "imfpa", cfg).totals
        exact = im.global_attempts == im.local_attempts
        ok = ok and within and exact
        lines.append(
            f"{name}: FPA global attempts {100 * frac:.2f}% (n={n}, 3sigma {100 * binomial_bound(0.8, n):.2f}%), "
            f"imFPA attempts {im.global_attempts}/{im.local_attempts}, "
            f"imFPA successes global {im.global_pct:.1f}% local {im.local_pct:.1f}%"
        )
    criterion("C5 operator split", ok, "; ".join(lines))


def test_c6_acceptance_probability(criterion):
    cfg = EngineConfig(population=20)
    exact_one = acceptance_probability(6, 6, 0, cfg) == 1.0
    half = abs(acceptance_probability(6, 3, 0, cfg) - math.exp(-0.5)) <= 1e-12
    f_old = 20
    grid = np.array([[acceptance_probability(f_old, f_old - d, s, cfg) for s in range(20)]
                     for d in range(20)])
    # rows: increasing fitness loss; columns: increasing success count
    dec_delta = np.all(np.diff(grid, axis=0) < 0)
    dec_s = np.all(np.diff(grid[1:], axis=1) < 0)
    flat_zero_delta = np.all(grid[0] == 1.0)
    ok = exact_one and half and dec_delta and dec_s and flat_zero_delta
    criterion("C6 acceptance probability", ok,
              f"P(0,0)=1 {exact_one}, P(6->3)=exp(-0.5) {half}, "
              f"strictly decreasing in delta {dec_delta} and in s {dec_s} over 20x20")


def test_c7_levy_sampler(criterion):
    import mpmath

    b = mpmath.mpf("1.5")
    oracle = float((mpmath.gamma(1 + b) * mpmath.sin(mpmath.pi * b / 2)
                    / (mpmath.gamma((1 + b) / 2) * b * 2 ** ((b - 1) / 2))) ** (1 / b))
    sigma_ok = abs(mantegna_sigma(1.5) - oracle) <= 1e-9

    from scipy import stats

    cfg = LevyConfig()
    x = levy_step(cfg, 10**6, np.random.default_rng(7))
    n = len(x)
    sym = abs((x > 0).mean() - 0.5) <= 3 * math.sqrt(0.25 / n) and abs(x.mean()) <= 3 * x.std() / math.sqrt(n)
    a = np.abs(x)
    sigma_fit = np.median(a) / stats.norm.ppf(0.75)
    x0 = 5 * cfg.scale
    tail = (a > x0).mean()
    heavy = tail > 100 * 2 * stats.norm.sf(x0 / sigma_fit)
    slope = math.log((a > 4 * x0).mean() / tail) / math.log(4)
    ok = sigma_ok and sym and heavy and -1.8 < slope < -1.2
    criterion("C7 Levy sampler", ok,
              f"sigma_u={mantegna_sigma(1.5):.12f} vs oracle {oracle:.12f}, symmetric {sym}, "
              f"P(|L|>5*scale)={tail:.4f} heavy {heavy}, tail slope {slope:.2f}")


def test_c8_differential_oracle(criterion):
    rng = np.random.default_rng(99)
    mismatches = 0
    for _ in range(1000):
        k = int(rng.integers(2, 7))
        cards = tuple(int(v) for v in rng.integers(2, 5, k))
        model = SystemModel(cards, int(rng.integers(2, min(4, k) + 1)))
        prefix = [tuple(int(rng.integers(0, v)) for v in cards) for _ in range(int(rng.integers(0, 15)))]
        cand = tuple(int(rng.integers(0, v)) for v in cards)
        tr = new_tracker(model)
        for r in prefix:
            tr.mark_covered(r)
        mismatches += tr.fitness(cand) != oracle_fitness(model, prefix, cand)
    criterion("C8 differential fitness oracle", mismatches == 0, f"1000 states, {mismatches} mismatches")


def _cli_report():
    cmd = [sys.executable, "-m", "imfpa", "generate", "--model", "3^4 t=2", "--engine", "imfpa",
           "--runs", "30", "--seed", "7", "--verify", "--format", "json"]
    proc = subprocess.run(cmd, capture_output=True, text=True, check=False)
    return proc.returncode, proc.stdout


def test_c9_cli_determinism(criterion):
    code_a, out_a = _cli_report()
    code_b, out_b = _cli_report()
    doc_a, doc_b = json.loads(out_a), json.loads(out_b)
    doc_a.pop("wall_time")
    doc_b.pop("wall_time")
    same = json.dumps(doc_a) == json.dumps(doc_b)
    ok = code_a == code_b == 0 and same and doc_a["runs"]["min"] <= 10
    criterion("C9 CLI determinism", ok,
              f"exit codes {code_a}/{code_b}, identical reports without wall_time {same}, "
              f"best size {doc_a['runs']['min']}")
