"""Exact brute-force TSP with interchangeable parallel backends.

The core library (instances, tour costs, the exhaustive solver, and the
permutation index arithmetic that partitions the search space) lives in
this namespace.  Execution backends, the benchmark harness and the wire
protocol are submodules: ``tspbench.backends``, ``tspbench.bench``,
``tspbench.metrics``, ``tspbench.instances``, ``tspbench.protocol``.
"""

from .core import (
    CostMatrix,
    SolveResult,
    better_result,
    format_instance,
    parse_instance,
    path_cost,
    reduce_results,
    solve_range,
    solve_serial,
)
from .errors import (
    CapacityError,
    CorrectnessError,
    ExecutionError,
    ProtocolError,
    ValidationError,
)
from .permutation import WorkRange, factorial, next_permutation, partition, rank, unrank

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CorrectnessError",
    "CostMatrix",
    "ExecutionError",
    "ProtocolError",
    "SolveResult",
    "ValidationError",
    "WorkRange",
    "better_result",
    "factorial",
    "format_instance",
    "next_permutation",
    "parse_instance",
    "partition",
    "path_cost",
    "rank",
    "reduce_results",
    "solve_range",
    "solve_serial",
    "unrank",
]
