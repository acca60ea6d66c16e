"""Lexicographic permutation arithmetic and work-range partitioning.

Permutations of a sorted label set are numbered 0 .. k!-1 in
lexicographic order.  Indices are plain Python ints, but the supported
range is deliberately capped at 34! so that every index fits in 128
bits; that keeps indices portable on the wire protocol and rules out
silently unbounded work requests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import CapacityError, ValidationError

#: A permutation index.  Plain int; values stay below 34! < 2**128.
PermIndex = int

#: Largest n for which factorial(n) still fits in 128 bits.
MAX_FACTORIAL_N = 34

_FACTORIALS = [1]
for _i in range(1, MAX_FACTORIAL_N + 1):
    _FACTORIALS.append(_FACTORIALS[-1] * _i)
del _i


def factorial(n: int) -> PermIndex:
    """n! for 0 <= n <= 34.

    Larger arguments raise CapacityError: the result would no longer
    fit in a 128-bit index.
    """
    if n < 0:
        raise ValidationError(f"factorial is undefined for negative n, got {n}")
    if n > MAX_FACTORIAL_N:
        raise CapacityError(
            f"factorial({n}) exceeds the 128-bit index range "
            f"(largest supported n is {MAX_FACTORIAL_N})"
        )
    return _FACTORIALS[n]


def next_permutation(seq: list) -> bool:
    """Advance ``seq`` to its lexicographic successor, in place.

    Returns True when a successor exists.  When ``seq`` is already the
    last permutation it is reset to sorted (first) order and False is
    returned, mirroring the C++ library convention so scan loops can
    detect the wrap-around.
    """
    if not seq:
        raise ValidationError("next_permutation of an empty sequence")
    i = len(seq) - 2
    while i >= 0 and seq[i] >= seq[i + 1]:
        i -= 1
    if i < 0:
        seq.reverse()
        return False
    j = len(seq) - 1
    while seq[j] <= seq[i]:
        j -= 1
    seq[i], seq[j] = seq[j], seq[i]
    seq[i + 1 :] = seq[len(seq) - 1 : i : -1]
    return True


def unrank(index: PermIndex, items: Sequence) -> list:
    """The permutation at position ``index`` in the lexicographic order
    of all permutations of ``items`` (sorted ascending, no duplicates).

    Factorial-number-system decoding: the digit of ``index`` in base
    (k-1)!, (k-2)!, ... picks which of the remaining items comes next.
    ``unrank(0, items)`` is ``items`` itself.
    """
    pool = list(items)
    k = len(pool)
    if sorted(pool) != pool:
        raise ValidationError("items must be sorted ascending")
    if len(set(pool)) != k:
        raise ValidationError("items must be distinct")
    total = factorial(k)
    if not 0 <= index < total:
        raise ValidationError(
            f"index {index} out of range for {k} items (valid: 0 .. {total - 1})"
        )
    out = []
    rem = index
    for pos in range(k - 1, -1, -1):
        digit, rem = divmod(rem, _FACTORIALS[pos])
        out.append(pool.pop(digit))
    return out


def rank(perm: Sequence) -> PermIndex:
    """Lexicographic index of ``perm`` among all permutations of its own
    label set; the inverse of :func:`unrank`.
    """
    pool = sorted(perm)
    k = len(pool)
    if len(set(pool)) != k:
        raise ValidationError("duplicate labels in permutation")
    factorial(k)  # capacity check
    index = 0
    for pos, label in enumerate(perm):
        d = pool.index(label)
        index += d * _FACTORIALS[k - 1 - pos]
        pool.pop(d)
    return index


@dataclass(frozen=True)
class WorkRange:
    """Half-open interval [start, end) of permutation indices owned by
    one worker.  Empty ranges (start == end) are legal no-op
    assignments, which keeps sweeps over worker counts uniform."""

    start: PermIndex
    end: PermIndex

    def __post_init__(self):
        if self.start < 0 or self.end < self.start:
            raise ValidationError(f"invalid work range [{self.start}, {self.end})")

    @property
    def count(self) -> PermIndex:
        """Number of permutations the owning worker evaluates."""
        return self.end - self.start


def partition(total: PermIndex, workers: int) -> list[WorkRange]:
    """Split [0, total) into exactly ``workers`` contiguous ranges.

    With q, r = divmod(total, workers) the first r ranges get q+1
    indices and the rest get q, so lengths never differ by more than
    one and the longer ranges always come first.  ``workers > total``
    yields empty trailing ranges.
    """
    if workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers}")
    if total < 0:
        raise ValidationError(f"total must be >= 0, got {total}")
    q, r = divmod(total, workers)
    ranges = []
    start = 0
    for i in range(workers):
        size = q + 1 if i < r else q
        ranges.append(WorkRange(start, start + size))
        start += size
    return ranges
