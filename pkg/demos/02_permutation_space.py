#!/usr/bin/env python3
"""How the permutation space is indexed and split among workers.

Every tour has a lexicographic index in 0 .. (n-1)!-1.  A worker gets a
half-open index range, unranks its start once, then walks successors.
"""

from tspbench.permutation import factorial, next_permutation, partition, rank, unrank

print("factorials grow brutally fast (the whole point of the exercise):")
for n in (5, 10, 15, 20, 34):
    print(f"  {n:>2}! = {factorial(n):,}")

print("\nunranking picks a permutation straight from its index:")
labels = [1, 2, 3, 4]
for index in (0, 7, 23):
    print(f"  index {index:>2} of {labels} -> {unrank(index, labels)}")

perm = unrank(7, labels)
print(f"\nwalking successors from index 7: {perm}", end="")
for _ in range(3):
    next_permutation(perm)
    print(f" -> {perm} (rank {rank(perm)})", end="")
print()

total = factorial(10 - 1)
print(f"\nsplitting the {total:,} tours of a 10-city instance among 7 workers:")
for i, work in enumerate(partition(total, 7)):
    print(f"  worker {i}: [{work.start:>6}, {work.end:>6})  ({work.count} tours)")
print("the first (total mod workers) workers carry one extra tour each;")
print("range sizes never differ by more than one.")

print("\nworkers beyond the available work simply go idle:")
for i, work in enumerate(partition(2, 5)):
    print(f"  worker {i}: [{work.start}, {work.end})  ({work.count} tours)")
