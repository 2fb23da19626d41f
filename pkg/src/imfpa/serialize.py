"""CSV suites and the versioned JSON run report."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .engine import EngineConfig, OperatorStats
from .generator import RunReport, RunSummary, TestSuite
from .model import SystemModel, TestCase, render_model
from .pollination import LevyConfig

SCHEMA_VERSION = 1

_STAT_FIELDS = ("global_attempts", "global_successes", "local_attempts", "local_successes", "generations")


def suite_to_csv(suite: TestSuite, names=None) -> str:
    """Header ``p0..p{k-1}`` then one row of value indices per test.

    ``names`` (from :func:`read_names`) swaps in parameter and value labels.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    k = suite.model.k
    if names is None:
        writer.writerow([f"p{i}" for i in range(k)])
        writer.writerows(t.values for t in suite.tests)
    else:
        if len(names) != k:
            raise ValueError(f"names file has {len(names)} parameters, model has {k}")
        writer.writerow([n for n, _ in names])
        writer.writerows([names[i][1][v] for i, v in enumerate(t.values)] for t in suite.tests)
    return buf.getvalue()


def suite_from_csv(text: str, model: SystemModel) -> TestSuite:
    rows = list(csv.reader(io.StringIO(text)))
    tests = [TestCase(int(x) for x in row) for row in rows[1:] if row]
    for t in tests:
        model.validate_test(t.values)
    return TestSuite(model, tests)


def read_names(path):
    """Parse ``name: v0, v1, ...`` lines, one per parameter, ``#`` comments allowed."""
    names = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line:
            name, values = line.split(":", 1)
        else:
            name, values = f"p{len(names)}", line
        names.append((name.strip(), [v.strip() for v in values.split(",")]))
    return names


def _stats_dict(s: OperatorStats) -> dict:
    return {f: getattr(s, f) for f in _STAT_FIELDS}


def _config_dict(c: EngineConfig) -> dict:
    return {
        "population": c.population,
        "max_generations": c.max_generations,
        "switch_p": c.switch_p,
        "accept_scale": c.accept_scale,
        "levy": {"beta": c.levy.beta, "scale": c.levy.scale},
        "seed": c.seed,
        "persist_counters": c.persist_counters,
    }


def report_to_dict(report: RunReport, summary: RunSummary | None = None) -> dict:
    model = report.suite.model
    totals = report.totals
    doc = {
        "schema_version": SCHEMA_VERSION,
        "model": {
            "spec": render_model(model),
            "cardinalities": list(model.cardinalities),
            "strength": model.strength,
        },
        "engine": report.engine,
        "seed": report.seed,
        "config": _config_dict(report.config),
        "suite": {"size": report.suite.size, "tests": [list(t.values) for t in report.suite.tests]},
        "per_test_stats": [_stats_dict(s) for s in report.per_test_stats],
        "totals": {
            **_stats_dict(totals),
            "global_pct": totals.global_pct,
            "local_pct": totals.local_pct,
        },
    }
    if summary is not None:
        doc["runs"] = {
            "count": len(summary.sizes),
            "base_seed": report.seed - summary.best_index,
            "best_index": summary.best_index,
            "sizes": list(summary.sizes),
            "min": summary.min,
            "mean": summary.mean,
            "max": summary.max,
            "stddev": summary.stddev,
        }
    doc["wall_time"] = report.wall_time
    return doc


def report_from_dict(doc: dict) -> tuple[RunReport, RunSummary | None]:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {doc.get('schema_version')!r}")
    m = doc["model"]
    model = SystemModel(tuple(m["cardinalities"]), m["strength"])
    c = doc["config"]
    cfg = EngineConfig(
        population=c["population"],
        max_generations=c["max_generations"],
        switch_p=c["switch_p"],
        accept_scale=c["accept_scale"],
        levy=LevyConfig(**c["levy"]),
        seed=c["seed"],
        persist_counters=c["persist_counters"],
    )
    suite = TestSuite(model, [TestCase(t) for t in doc["suite"]["tests"]])
    stats = [OperatorStats(**s) for s in doc["per_test_stats"]]
    report = RunReport(suite, doc["engine"], cfg, doc["seed"], doc["wall_time"], stats)
    summary = None
    if "runs" in doc:
        summary = RunSummary(tuple(doc["runs"]["sizes"]), doc["runs"]["best_index"])
    return report, summary


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def report_to_json(report: RunReport, summary: RunSummary | None = None) -> str:
    return dumps(report_to_dict(report, summary))


def report_from_json(text: str):
    return report_from_dict(json.loads(text))
