"""Command-line interface.

Subcommands: gen, solve, bench, metrics.  The hidden --worker flag
enters message-passing worker mode (used by coordinator self-invocation
and never shown in help).  Exit codes: 0 success, 1 validation error,
2 execution or correctness error.  Diagnostics go to stderr; data goes
to files or stdout.
"""

from __future__ import annotations

import sys

from .errors import ExecutionError, ValidationError

DEFAULT_SWEEP = "8,9,10,11,12"

#: Problem sizes at or above this need the --big acknowledgment; a
#: serial n=13 solve alone runs for hours.
BIG_N = 13


def _write_file(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise ValidationError(f"cannot write {path}: {exc}") from None


def _cmd_gen(args) -> int:
    from .core import format_instance
    from .instances import generate_instance

    matrix = generate_instance(args.n, args.seed, symmetric=not args.asymmetric)
    _write_file(args.out, format_instance(matrix))
    return 0


def _load_matrix(path: str):
    from .core import parse_instance

    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read instance file: {exc}") from None
    return parse_instance(text)


def _cmd_solve(args) -> int:
    import time

    from . import backends

    spec_kwargs = {}
    if args.backend in ("shared_memory", "hybrid"):
        spec_kwargs["threads"] = args.threads
    if args.backend in ("message_passing", "hybrid"):
        spec_kwargs["processes"] = args.procs
    spec = backends.BackendSpec(args.backend, **spec_kwargs)
    matrix = _load_matrix(args.input)
    t0 = time.perf_counter()
    result = backends.solve(matrix, spec)
    elapsed = time.perf_counter() - t0
    print(f"cost {result.optimal_cost}")
    print(f"path {' '.join(str(c) for c in result.optimal_path)}")
    print(f"seconds {elapsed:.6f}")
    return 0


def _parse_n_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ValidationError(f"bad problem-size list {text!r}") from None
    if not values:
        raise ValidationError(f"bad problem-size list {text!r}")
    return values


def _cmd_bench(args) -> int:
    from . import backends, bench

    n_values = _parse_n_list(args.n)
    if max(n_values) >= BIG_N and not args.big:
        raise ValidationError(
            f"n >= {BIG_N} takes hours serially; pass --big to acknowledge"
        )
    specs = tuple(backends.parse_backend_spec(tok) for tok in args.backends.split(","))
    plan = bench.BenchPlan(
        n_values=n_values,
        backends=specs,
        repetitions=args.reps,
        warmup=args.warmup,
        seed=args.seed,
        symmetric=not args.asymmetric,
    )
    report = bench.run_bench(plan)
    text = bench.report_to_json(report)
    if args.out:
        _write_file(args.out, text)
    else:
        sys.stdout.write(text)
    if args.csv:
        _write_file(args.csv, bench.raw_csv_text(report))
    return 0


def _cmd_metrics(args) -> int:
    from . import bench

    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            report = bench.report_from_json(fh.read())
    except OSError as exc:
        raise ValidationError(f"cannot read report: {exc}") from None
    text = bench.metrics_csv_text(report)
    if args.out:
        _write_file(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _build_parser():
    import argparse

    parser = argparse.ArgumentParser(
        prog="tspbench",
        description="Exact brute-force TSP solving and parallel-backend benchmarking.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random instance file")
    gen.add_argument("--n", type=int, required=True, help="number of cities (2..34)")
    gen.add_argument("--seed", type=int, default=0, help="64-bit generator seed")
    gen.add_argument("--symmetric", action="store_true", default=True,
                     help="mirror the upper triangle (default)")
    gen.add_argument("--asymmetric", action="store_true",
                     help="draw every off-diagonal entry independently")
    gen.add_argument("--out", required=True, help="output instance file")
    gen.set_defaults(func=_cmd_gen)

    solve = sub.add_parser("solve", help="solve one instance file")
    solve.add_argument("--input", required=True, help="instance file")
    solve.add_argument("--backend", default="serial",
                       choices=["serial", "shared_memory", "message_passing", "hybrid"])
    solve.add_argument("--threads", type=int, default=1,
                       help="team size for shared_memory/hybrid")
    solve.add_argument("--procs", type=int, default=1,
                       help="worker processes for message_passing/hybrid")
    solve.set_defaults(func=_cmd_solve)

    bench_p = sub.add_parser("bench", help="run a benchmark sweep")
    bench_p.add_argument("--n", default=DEFAULT_SWEEP,
                         help=f"comma-separated city counts (default {DEFAULT_SWEEP})")
    bench_p.add_argument("--backends", default="serial,threads:2,threads:4,procs:2,procs:4",
                         help="comma-separated: serial, threads:T, procs:P, hybrid:PxT")
    bench_p.add_argument("--reps", type=int, default=5, help="timed repetitions per config")
    bench_p.add_argument("--warmup", type=int, default=1, help="untimed warm-up runs per config")
    bench_p.add_argument("--seed", type=int, default=0, help="instance-generation seed")
    bench_p.add_argument("--asymmetric", action="store_true",
                         help="benchmark asymmetric instances")
    bench_p.add_argument("--big", action="store_true",
                         help=f"allow n >= {BIG_N} (hours of serial runtime)")
    bench_p.add_argument("--out", help="write the JSON report here (default: stdout)")
    bench_p.add_argument("--csv", help="also write raw per-run timings as CSV")
    bench_p.set_defaults(func=_cmd_bench)

    metrics = sub.add_parser("metrics", help="derive the metrics CSV from a JSON report")
    metrics.add_argument("--input", required=True, help="JSON report from bench")
    metrics.add_argument("--out", help="write the metrics CSV here (default: stdout)")
    metrics.set_defaults(func=_cmd_metrics)

    return parser


def cli_dispatch(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    if "--worker" in argv:
        from .worker import run_worker

        return run_worker()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage errors; usage
        # problems are validation errors here.
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ExecutionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_dispatch())
