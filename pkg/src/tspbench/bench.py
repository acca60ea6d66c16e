"""Benchmark sweeps: warmed-up, repeated, correctness-guarded timing.

A sweep times every (n, backend) pair of a plan with a monotonic clock,
checks each run's answer against the serial baseline (any disagreement
aborts the sweep; a report with inconsistent results must never exist),
and materializes both raw timings and derived metrics.

Report formats
--------------
JSON: canonical encoding (sorted keys, two-space indent, trailing
newline) holding full-precision numbers; parse/emit round-trips are
byte-identical.  CSV: raw rows as ``backend,n,p,run_index,seconds``
with seconds to 6 decimals; the metrics table as
``backend,n,p,mean_seconds,speedup,efficiency,karp_flatt`` with the
mean to 6 decimals, the three ratios to 3 decimals, and an empty
karp_flatt cell where it is undefined (p = 1).
"""

from __future__ import annotations

import json
import os
import platform
import time
from dataclasses import dataclass
from statistics import median
from typing import Iterable

from . import backends as _backends
from .backends import BackendSpec
from .core import CostMatrix, SolveResult
from .errors import CorrectnessError, ExecutionError, ValidationError
from .instances import generate_instance
from .metrics import MetricsRow, TimingRecord, build_metrics_table

SCHEMA_VERSION = "1"

RAW_CSV_HEADER = "backend,n,p,run_index,seconds"
METRICS_CSV_HEADER = "backend,n,p,mean_seconds,speedup,efficiency,karp_flatt"


@dataclass(frozen=True)
class BenchPlan:
    """What to benchmark.  The serial backend is always run first for
    every n (prepended when absent) because the metrics need its mean
    as the baseline."""

    n_values: tuple[int, ...]
    backends: tuple[BackendSpec, ...]
    repetitions: int = 5
    warmup: int = 1
    seed: int = 0
    symmetric: bool = True

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(self.n_values))
        object.__setattr__(self, "backends", tuple(self.backends))
        if not self.n_values:
            raise ValidationError("plan needs at least one problem size")
        for n in self.n_values:
            if n < 2:
                raise ValidationError(f"problem size must be >= 2, got {n}")
        if not self.backends:
            raise ValidationError("plan needs at least one backend")
        if self.repetitions < 1:
            raise ValidationError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.warmup < 0:
            raise ValidationError(f"warmup must be >= 0, got {self.warmup}")


@dataclass(frozen=True)
class InstanceSolution:
    """The (deterministic) answer for one problem size, kept in the
    report so consumers can check reproducibility without re-solving."""

    n: int
    optimal_cost: int
    optimal_path: tuple[int, ...]


@dataclass(frozen=True)
class Report:
    schema_version: str
    plan: BenchPlan
    environment: str
    solutions: tuple[InstanceSolution, ...]
    timings: tuple[TimingRecord, ...]
    metrics: tuple[MetricsRow, ...]


def _normalized_backends(specs: Iterable[BackendSpec]) -> tuple[BackendSpec, ...]:
    specs = list(specs)
    serial = BackendSpec("serial")
    if serial in specs:
        specs.remove(serial)
    return (serial, *specs)


def describe_environment() -> str:
    return (
        f"{platform.platform()} | Python {platform.python_version()} | "
        f"{os.cpu_count()} logical CPUs"
    )


def _timed_solve(matrix: CostMatrix, spec: BackendSpec) -> tuple[float, SolveResult]:
    t0 = time.perf_counter()
    result = _backends.solve(matrix, spec)
    elapsed = time.perf_counter() - t0
    if elapsed <= 0:
        raise ExecutionError("monotonic clock did not advance across a solve")
    return elapsed, result


def run_bench(plan: BenchPlan) -> Report:
    """Execute a plan: per (n, backend), ``plan.warmup`` untimed runs
    then ``plan.repetitions`` timed ones.

    Timing covers the full user-visible solve, worker spawn and
    partitioning included, and excludes instance generation and report
    I/O.  Every run (warm-up included) must agree with the serial
    baseline; a mismatch raises CorrectnessError and no report is
    produced.
    """
    specs = _normalized_backends(plan.backends)
    plan = BenchPlan(
        n_values=plan.n_values,
        backends=specs,
        repetitions=plan.repetitions,
        warmup=plan.warmup,
        seed=plan.seed,
        symmetric=plan.symmetric,
    )
    records: list[TimingRecord] = []
    solutions: list[InstanceSolution] = []
    baseline: dict[int, float] = {}
    baseline_result: dict[int, SolveResult] = {}
    for n in plan.n_values:
        matrix = generate_instance(n, plan.seed, plan.symmetric)
        for spec in plan.backends:
            runs = []
            for run_index in range(plan.warmup + plan.repetitions):
                elapsed, result = _timed_solve(matrix, spec)
                if spec.kind == "serial" and n not in baseline_result:
                    baseline_result[n] = result
                expected = baseline_result[n]
                if result != expected:
                    raise CorrectnessError(
                        f"{spec.label()} on n={n} returned cost {result.optimal_cost}, "
                        f"path {list(result.optimal_path)} but the serial baseline is "
                        f"cost {expected.optimal_cost}, path {list(expected.optimal_path)}"
                    )
                if run_index >= plan.warmup:
                    runs.append(elapsed)
            record = TimingRecord.from_runs(spec.kind, n, spec.parallel_elements, runs)
            records.append(record)
            if spec.kind == "serial" and n not in baseline:
                baseline[n] = record.mean_time
        base = baseline_result[n]
        solutions.append(InstanceSolution(n, base.optimal_cost, base.optimal_path))
    return Report(
        schema_version=SCHEMA_VERSION,
        plan=plan,
        environment=describe_environment(),
        solutions=tuple(solutions),
        timings=tuple(records),
        metrics=tuple(build_metrics_table(records, baseline)),
    )


# --- serialization ---------------------------------------------------------


def _spec_to_dict(spec: BackendSpec) -> dict:
    return {"kind": spec.kind, "threads": spec.threads, "processes": spec.processes}


def _spec_from_dict(data: dict) -> BackendSpec:
    return BackendSpec(
        kind=data["kind"], threads=data.get("threads"), processes=data.get("processes")
    )


def report_to_json(report: Report) -> str:
    """Canonical JSON text for a report (byte-stable across round-trips)."""
    payload = {
        "schema_version": report.schema_version,
        "plan": {
            "n_values": list(report.plan.n_values),
            "backends": [_spec_to_dict(s) for s in report.plan.backends],
            "repetitions": report.plan.repetitions,
            "warmup": report.plan.warmup,
            "seed": report.plan.seed,
            "symmetric": report.plan.symmetric,
        },
        "environment": report.environment,
        "solutions": [
            {"n": s.n, "optimal_cost": s.optimal_cost, "optimal_path": list(s.optimal_path)}
            for s in report.solutions
        ],
        "timings": [
            {
                "backend": r.backend,
                "n": r.n,
                "p": r.p,
                "runs": list(r.runs),
                "mean_seconds": r.mean_time,
                "min_seconds": min(r.runs),
                "median_seconds": median(r.runs),
            }
            for r in report.timings
        ],
        "metrics": [
            {
                "backend": m.backend,
                "n": m.n,
                "p": m.p,
                "mean_seconds": m.mean_seconds,
                "speedup": m.speedup,
                "efficiency": m.efficiency,
                "karp_flatt": m.karp_flatt,
            }
            for m in report.metrics
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def report_from_json(text: str) -> Report:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed report JSON: {exc}") from None
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValidationError(
            f"unsupported report schema {data.get('schema_version')!r}, expected {SCHEMA_VERSION!r}"
        )
    try:
        plan_data = data["plan"]
        plan = BenchPlan(
            n_values=tuple(plan_data["n_values"]),
            backends=tuple(_spec_from_dict(s) for s in plan_data["backends"]),
            repetitions=plan_data["repetitions"],
            warmup=plan_data["warmup"],
            seed=plan_data["seed"],
            symmetric=plan_data["symmetric"],
        )
        solutions = tuple(
            InstanceSolution(s["n"], s["optimal_cost"], tuple(s["optimal_path"]))
            for s in data["solutions"]
        )
        timings = tuple(
            TimingRecord(
                backend=r["backend"],
                n=r["n"],
                p=r["p"],
                runs=tuple(r["runs"]),
                mean_time=r["mean_seconds"],
            )
            for r in data["timings"]
        )
        metrics = tuple(
            MetricsRow(
                backend=m["backend"],
                n=m["n"],
                p=m["p"],
                mean_seconds=m["mean_seconds"],
                speedup=m["speedup"],
                efficiency=m["efficiency"],
                karp_flatt=m["karp_flatt"],
            )
            for m in data["metrics"]
        )
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"report JSON is missing fields: {exc}") from None
    return Report(
        schema_version=data["schema_version"],
        plan=plan,
        environment=data["environment"],
        solutions=solutions,
        timings=timings,
        metrics=metrics,
    )


def raw_csv_text(report: Report) -> str:
    lines = [RAW_CSV_HEADER]
    for record in report.timings:
        for run_index, seconds in enumerate(record.runs):
            lines.append(f"{record.backend},{record.n},{record.p},{run_index},{seconds:.6f}")
    return "\n".join(lines) + "\n"


def metrics_csv_text(report: Report) -> str:
    lines = [METRICS_CSV_HEADER]
    for row in report.metrics:
        kf = "" if row.karp_flatt is None else f"{row.karp_flatt:.3f}"
        lines.append(
            f"{row.backend},{row.n},{row.p},{row.mean_seconds:.6f},"
            f"{row.speedup:.3f},{row.efficiency:.3f},{kf}"
        )
    return "\n".join(lines) + "\n"
