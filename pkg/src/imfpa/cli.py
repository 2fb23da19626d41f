"""Command-line front end: ``imfpa generate`` and ``imfpa bench``.

Exit codes: 0 success, 1 bad model or configuration, 2 generation failure
(stall or capacity), 3 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench
from .engine import EngineConfig
from .errors import GenerationError, ModelError
from .generator import DEFAULT_STALL_LIMIT, best_of_runs
from .model import parse_model, parse_model_file
from .pollination import LevyConfig
from .serialize import dumps, read_names, report_to_json, suite_to_csv
from .verify import oracle_verify

EXIT_CONFIG, EXIT_GENERATION, EXIT_VERIFY = 1, 2, 3


def _add_engine_flags(p, engine_choices):
    p.add_argument("--engine", choices=engine_choices, default="imfpa")
    p.add_argument("--pop", type=int, default=500, help="population size")
    p.add_argument("--gens", type=int, default=500, help="max generations per test")
    p.add_argument("--switch-p", type=float, default=0.8, help="FPA switch probability")
    p.add_argument("--accept-scale", type=float, default=None,
                   help="imFPA success-count scale S0 (default: population)")
    p.add_argument("--beta", type=float, default=1.5, help="Levy stability index")
    p.add_argument("--levy-scale", type=float, default=0.01)
    p.add_argument("--persist-counters", action="store_true",
                   help="carry imFPA success counters across test cases")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1, help="parallel runs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="imfpa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build a covering suite")
    g.add_argument("--model", required=True, help='model text like "3^4 t=2" or a model file')
    _add_engine_flags(g, ["fpa", "imfpa"])
    g.add_argument("--out", help="output path (default: stdout)")
    g.add_argument("--format", choices=["csv", "json"], default="csv")
    g.add_argument("--report", help="also write the JSON report here")
    g.add_argument("--names", help="parameter/value names file for CSV output")
    g.add_argument("--verify", action="store_true", help="check completeness with the brute-force oracle")
    g.add_argument("--stall-limit", type=int, default=DEFAULT_STALL_LIMIT)

    b = sub.add_parser("bench", help="rerun published systems")
    b.add_argument("--systems", default=",".join(bench.DEFAULT_SYSTEMS))
    b.add_argument("--all", action="store_true", help="every published system (slow)")
    _add_engine_flags(b, ["fpa", "imfpa", "both"])
    b.set_defaults(runs=30)
    b.add_argument("--out", help="write the JSON document here")
    return parser


def _config(args) -> EngineConfig:
    return EngineConfig(
        population=args.pop,
        max_generations=args.gens,
        switch_p=args.switch_p,
        accept_scale=args.accept_scale,
        levy=LevyConfig(args.beta, args.levy_scale),
        seed=args.seed,
        persist_counters=args.persist_counters,
    )


def _load_models(text):
    if Path(text).is_file():
        models = parse_model_file(text)
        if not models:
            raise ModelError(f"no models in {text}")
        return models
    return [parse_model(text)]


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _indexed(path, i, n):
    if path is None or n == 1:
        return path
    p = Path(path)
    return str(p.with_name(f"{p.stem}.{i}{p.suffix}"))


def cmd_generate(args) -> int:
    try:
        models = _load_models(args.model)
        cfg = _config(args)
        if args.runs < 1:
            raise ValueError("--runs must be >= 1")
        names = read_names(args.names) if args.names else None
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if len(models) > 1 and args.out is None and args.format == "json":
        print("error: several models need --out", file=sys.stderr)
        return EXIT_CONFIG

    status = 0
    for i, model in enumerate(models):
        try:
            report, summary = best_of_runs(
                model, args.engine, cfg, args.runs, args.seed,
                jobs=args.jobs, stall_limit=args.stall_limit,
            )
        except GenerationError as exc:
            print(f"error: {model}: {exc}", file=sys.stderr)
            return EXIT_GENERATION
        try:
            if args.format == "csv":
                body = suite_to_csv(report.suite, names)
            else:
                body = report_to_json(report, summary)
        except (ValueError, IndexError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        _write(body, _indexed(args.out, i, len(models)))
        if args.report:
            Path(_indexed(args.report, i, len(models))).write_text(report_to_json(report, summary))
        if args.verify:
            verdict = oracle_verify(model, report.suite)
            if not verdict.complete:
                print(f"error: {model}: suite misses {len(verdict.missing)} tuples, "
                      f"e.g. {verdict.missing[0]}", file=sys.stderr)
                status = EXIT_VERIFY
    return status


def cmd_bench(args) -> int:
    if args.all:
        systems = list(bench.FIXTURES)
        print("warning: --all includes systems that take hours at the default budget",
              file=sys.stderr)
    else:
        systems = [s.strip() for s in args.systems.split(",") if s.strip()]
    unknown = [s for s in systems if s not in bench.FIXTURES]
    if unknown:
        print(f"error: unknown systems {unknown}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = _config(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    engines = ("fpa", "imfpa") if args.engine == "both" else (args.engine,)
    try:
        doc = bench.run_bench(systems, engines, cfg, args.runs, args.jobs)
    except GenerationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GENERATION
    sys.stdout.write(bench.format_bench(doc))
    if args.out:
        Path(args.out).write_text(dumps(doc))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "generate":
        return cmd_generate(args)
    return cmd_bench(args)


if __name__ == "__main__":
    sys.exit(main())
