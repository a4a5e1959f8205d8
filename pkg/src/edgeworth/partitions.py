from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod


@dataclass(frozen=True)
class WeightedPartition:
    """Non-negative solution of r_1 + 2 r_2 + ... + k r_k = k"""

    k: int
    r: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.r) != self.k:
            raise ValueError(f"Partition of {self.k} needs {self.k} entries, got {self.r}")
        if sum((i + 1) * ri for i, ri in enumerate(self.r)) != self.k:
            raise ValueError(f"{self.r} is not a weighted partition of {self.k}")

    @property
    def j(self) -> int:
        return sum(self.r)


def _solutions(k: int, index: int, remaining: int) -> Iterator[tuple[int, ...]]:
    # index is 1-based weight of the current slot, larger r at earlier slots first
    if index > k:
        if remaining == 0:
            yield ()
        return
    for ri in range(remaining // index, -1, -1):
        for rest in _solutions(k, index + 1, remaining - index * ri):
            yield (ri,) + rest


@lru_cache(maxsize=None)
def _weighted_partitions(k: int) -> tuple[WeightedPartition, ...]:
    return tuple(WeightedPartition(k=k, r=r) for r in _solutions(k, 1, k))


def weighted_partitions(k: int) -> list[WeightedPartition]:
    if k < 1:
        raise ValueError(f"Partitions need k >= 1, got {k}")
    return list(_weighted_partitions(k))


@lru_cache(maxsize=None)
def grouped_compositions(
    total: int, parts: int, max_part: int | None = None
) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Compositions of total into `parts` positive parts, grouped by multiset.

    Returns (non-increasing representative, number of orderings) pairs.
    """
    max_part = total if max_part is None else max_part
    groups = []
    for partition in _partitions(total, parts, max_part):
        orderings = factorial(parts) // prod(factorial(c) for c in Counter(partition).values())
        groups.append((partition, orderings))
    return tuple(groups)


def _partitions(total: int, parts: int, largest: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(largest, total - (parts - 1)), 0, -1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest
