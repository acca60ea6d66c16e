"""Problem instances, tour-cost evaluation, and the exhaustive solver.

A problem instance is an immutable square matrix of non-negative
integer trip costs.  Tours start and end at city 0, so a candidate
solution is a permutation of the remaining labels 1 .. n-1 and the
solver scans all (n-1)! of them keeping the cheapest.

Among equal-cost optima the lexicographically smallest permutation
wins.  Every backend applies the same tie-break, which makes results
identical bit for bit regardless of how the permutation space was
partitioned or in which order partial results were combined.
"""

from __future__ import annotations

import operator
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ValidationError
from .permutation import WorkRange, factorial, next_permutation, unrank

#: Hard cap on one trip cost, enforced at construction.  34 legs of
#: 10**9 still sum well inside 64 bits, so accumulated tour costs are
#: exact in any consumer, wire format included.
MAX_COST = 10**9

#: Cost reported for an empty work range: strictly larger than any real
#: tour cost, and representable as a 64-bit value on the wire.
INFINITE_COST = 2**63 - 1

#: Largest solvable instance; (n-1)! must stay inside the 128-bit
#: index range.
MAX_CITIES = 34

#: Environment variable for fault-injection tests: when set (non-empty)
#: the range scanner keeps the costliest tour instead of the cheapest,
#: so any harness that checks backends against the serial baseline must
#: fail loudly.  Never set this outside tests.
FAULT_ENV_VAR = "TSPBENCH_FAULT_INVERT"


@dataclass(frozen=True)
class CostMatrix:
    """Square grid of non-negative integer trip costs with a zero
    diagonal.  Asymmetric instances are legal: costs[i][j] need not
    equal costs[j][i].  Instances are immutable after construction and
    safe to share read-only across any number of workers."""

    costs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.costs)
        object.__setattr__(self, "costs", rows)
        n = len(rows)
        if n < 2:
            raise ValidationError(f"need at least 2 cities, got {n}")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValidationError(
                    f"row {i} has {len(row)} entries, expected {n} (matrix must be square)"
                )
            for j, cost in enumerate(row):
                if not isinstance(cost, int) or isinstance(cost, bool):
                    raise ValidationError(f"cost[{i}][{j}] is not an integer: {cost!r}")
                if cost < 0:
                    raise ValidationError(f"cost[{i}][{j}] is negative: {cost}")
                if cost > MAX_COST:
                    raise ValidationError(
                        f"cost[{i}][{j}] = {cost} exceeds the maximum {MAX_COST}"
                    )
            if row[i] != 0:
                raise ValidationError(f"diagonal entry [{i}][{i}] must be 0, got {row[i]}")

    @property
    def n(self) -> int:
        return len(self.costs)


@dataclass(frozen=True)
class SolveResult:
    """Optimal cost and closed tour, plus how many permutations were
    examined to find them.  The empty sentinel (infinite cost, empty
    path, zero evaluated) stands for "no permutations scanned" and is
    the identity of result reduction."""

    optimal_cost: int
    optimal_path: tuple[int, ...]
    evaluated: int

    def __post_init__(self):
        object.__setattr__(self, "optimal_path", tuple(self.optimal_path))
        if self.optimal_cost < 0:
            raise ValidationError(f"negative tour cost {self.optimal_cost}")
        if self.evaluated < 0:
            raise ValidationError(f"negative evaluation count {self.evaluated}")
        if self.optimal_path:
            if self.optimal_path[0] != 0 or self.optimal_path[-1] != 0:
                raise ValidationError("tour must start and end at city 0")
            inner = self.optimal_path[1:-1]
            if len(set(inner)) != len(inner) or 0 in inner:
                raise ValidationError("tour must visit each remaining city exactly once")


#: Reduction identity: the result of scanning nothing.
EMPTY_RESULT = SolveResult(INFINITE_COST, (), 0)


def check_city_count(n: int) -> None:
    if not 2 <= n <= MAX_CITIES:
        raise ValidationError(f"city count must be in 2 .. {MAX_CITIES}, got {n}")


def path_cost(perm: Sequence[int], matrix: CostMatrix) -> int:
    """Cost of the closed tour 0 -> perm[0] -> ... -> perm[-1] -> 0.

    ``perm`` must be a permutation of 1 .. n-1.
    """
    n = matrix.n
    if len(perm) != n - 1:
        raise ValidationError(f"permutation has {len(perm)} labels, expected {n - 1}")
    seen = set()
    for label in perm:
        if not isinstance(label, int) or not 1 <= label < n:
            raise ValidationError(f"city label {label!r} out of range 1 .. {n - 1}")
        if label in seen:
            raise ValidationError(f"city label {label} repeated")
        seen.add(label)
    costs = matrix.costs
    prev = 0
    total = 0
    for city in perm:
        total += costs[prev][city]
        prev = city
    return total + costs[prev][0]


def _fault_enabled() -> bool:
    return bool(os.environ.get(FAULT_ENV_VAR))


def _scan(costs, perm: list[int], count: int, keep_worse: bool = False):
    """Evaluate ``count`` consecutive permutations starting from ``perm``
    (mutated in place), returning (best_cost, best_perm).

    The strict comparison keeps the first optimum encountered, which in
    ascending lexicographic order is the smallest optimal permutation.
    ``keep_worse`` flips the comparison; it exists only for
    fault-injection tests of the benchmark correctness guard.
    """
    better = operator.gt if keep_worse else operator.lt
    best_cost = -1 if keep_worse else INFINITE_COST
    best_perm = None
    remaining = count
    while remaining > 0:
        cost = 0
        prev = 0
        for city in perm:
            cost += costs[prev][city]
            prev = city
        cost += costs[prev][0]
        if better(cost, best_cost):
            best_cost = cost
            best_perm = perm.copy()
        remaining -= 1
        if remaining and not next_permutation(perm):
            raise ValidationError("scan ran past the last permutation")
    return best_cost, best_perm


def solve_serial(matrix: CostMatrix) -> SolveResult:
    """Scan all (n-1)! tours in lexicographic order and keep the
    cheapest; the reference every parallel backend is checked against.
    """
    n = matrix.n
    check_city_count(n)
    total = factorial(n - 1)
    perm = list(range(1, n))
    best_cost, best_perm = _scan(matrix.costs, perm, total)
    return SolveResult(best_cost, (0, *best_perm, 0), total)


def solve_range(matrix: CostMatrix, work: WorkRange) -> SolveResult:
    """Best tour among permutations with lexicographic indices in
    [work.start, work.end); the primitive every worker runs.

    One unrank call seeds the scan and successive candidates come from
    next_permutation, so a worker only pays the unranking cost once.
    An empty range yields the infinite-cost sentinel.
    """
    n = matrix.n
    check_city_count(n)
    total = factorial(n - 1)
    if work.end > total:
        raise ValidationError(
            f"work range [{work.start}, {work.end}) exceeds the {total} permutations of n={n}"
        )
    if work.count == 0:
        return EMPTY_RESULT
    perm = unrank(work.start, range(1, n))
    best_cost, best_perm = _scan(matrix.costs, perm, work.count, keep_worse=_fault_enabled())
    return SolveResult(best_cost, (0, *best_perm, 0), work.count)


def better_result(a: SolveResult, b: SolveResult) -> SolveResult:
    """The smaller of two results by (cost, path).  Associative,
    commutative, total, and with EMPTY_RESULT as identity, so
    reductions may combine partial results in any order."""
    if (b.optimal_cost, b.optimal_path) < (a.optimal_cost, a.optimal_path):
        return b
    return a


def reduce_results(results: Iterable[SolveResult]) -> SolveResult:
    """Combine per-worker results: minimum by (cost, path), with
    evaluation counts summed so the reduced result reports the full
    amount of work performed."""
    best = EMPTY_RESULT
    evaluated = 0
    for result in results:
        evaluated += result.evaluated
        best = better_result(best, result)
    return SolveResult(best.optimal_cost, best.optimal_path, evaluated)


def parse_instance(text: str) -> CostMatrix:
    """Parse the plain-text instance format.

    Line 1 is the city count n; lines 2 .. n+1 hold n comma-separated
    non-negative integers each.  Ragged rows, negative entries and a
    nonzero diagonal are rejected.
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ValidationError("empty instance file")
    head = lines[0].strip()
    try:
        n = int(head)
    except ValueError:
        raise ValidationError(f"line 1: expected the city count, got {head!r}") from None
    if n < 2:
        raise ValidationError(f"line 1: city count must be >= 2, got {n}")
    if len(lines) - 1 != n:
        raise ValidationError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != n:
            raise ValidationError(f"line {lineno}: expected {n} values, got {len(parts)}")
        try:
            rows.append(tuple(int(p) for p in parts))
        except ValueError:
            raise ValidationError(f"line {lineno}: non-integer cost entry") from None
    return CostMatrix(tuple(rows))


def format_instance(matrix: CostMatrix) -> str:
    """Serialize a matrix in the plain-text instance format."""
    lines = [str(matrix.n)]
    lines.extend(",".join(str(c) for c in row) for row in matrix.costs)
    return "\n".join(lines) + "\n"
