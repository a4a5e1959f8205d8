from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial, prod


@dataclass(frozen=True, order=True)
class MultiIndex:
    components: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.components) < 1:
            raise ValueError("MultiIndex needs at least one component")
        if any(c < 0 for c in self.components):
            raise ValueError(f"MultiIndex components must be non-negative: {self.components}")

    @property
    def dimension(self) -> int:
        return len(self.components)

    @cached_property
    def norm(self) -> int:
        return sum(self.components)

    @cached_property
    def factorial(self) -> int:
        return prod(factorial(c) for c in self.components)

    def __add__(self, other: "MultiIndex") -> "MultiIndex":
        if other.dimension != self.dimension:
            raise ValueError(
                f"Cannot add multi-indices of dimension {self.dimension} and {other.dimension}"
            )
        return MultiIndex(tuple(a + b for a, b in zip(self.components, other.components)))

    def label(self) -> str:
        if self.dimension == 1:
            return f"γ{self.components[0]}"
        return "γ(" + ",".join(str(c) for c in self.components) + ")"

    @classmethod
    def axis(cls, dimension: int, axis: int, order: int) -> "MultiIndex":
        components = [0] * dimension
        components[axis] = order
        return cls(tuple(components))


@lru_cache(maxsize=None)
def _compositions(d: int, k: int) -> tuple[tuple[int, ...], ...]:
    if d == 1:
        return ((k,),)
    return tuple(
        (first,) + rest for first in range(k + 1) for rest in _compositions(d - 1, k - first)
    )


def multiindex_enumerate(d: int, k: int) -> list[MultiIndex]:
    """All multi-indices of dimension d with |ν| = k, lexicographically ascending"""
    if d < 1 or k < 0:
        raise ValueError(f"Need d >= 1 and k >= 0, got d={d}, k={k}")
    return [MultiIndex(c) for c in _compositions(d, k)]
