"""Dynkin/Cartan data for the affine D-series and classical weight arithmetic.

Colors are the integers 0..n.  Classical weights are dense integer tuples of
length n+1, coefficient j being the multiple of the j-th fundamental weight.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError

Weight = tuple[int, ...]


@dataclass(frozen=True)
class AlgebraParams:
    """Rank parameter n (n >= 4) and level (>= 1)."""

    n: int
    level: int

    def __post_init__(self):
        if self.n < 4:
            raise DomainError(f"rank parameter must be >= 4, got {self.n}")
        if self.level < 1:
            raise DomainError(f"level must be >= 1, got {self.level}")

    @property
    def colors(self) -> range:
        return range(self.n + 1)


def _check_color(params: AlgebraParams, i: int) -> None:
    if not 0 <= i <= params.n:
        raise DomainError(f"color {i} out of range 0..{params.n}")


def _adjacent(n: int, i: int, j: int) -> bool:
    if i > j:
        i, j = j, i
    if (i, j) in ((0, 2), (1, 2)):
        return True
    if 2 <= i <= n - 3 and j == i + 1:
        return True
    if i == n - 2 and j in (n - 1, n):
        return True
    return False


def cartan(params: AlgebraParams, i: int, j: int) -> int:
    """Entry a_ij of the generalized Cartan matrix (symmetric for this type)."""
    _check_color(params, i)
    _check_color(params, j)
    if i == j:
        return 2
    return -1 if _adjacent(params.n, i, j) else 0


def classical_alpha(params: AlgebraParams, i: int) -> Weight:
    """Classical image of the i-th simple root, as fundamental-weight coefficients."""
    _check_color(params, i)
    return tuple(cartan(params, j, i) for j in params.colors)


def level_of(params: AlgebraParams, weight: Weight) -> int:
    """Level of a classical weight: a_0 + a_1 + 2(a_2 + .. + a_{n-2}) + a_{n-1} + a_n."""
    n = params.n
    if len(weight) != n + 1:
        raise DomainError(f"weight must have length {n + 1}, got {len(weight)}")
    return (
        weight[0]
        + weight[1]
        + 2 * sum(weight[2 : n - 1])
        + weight[n - 1]
        + weight[n]
    )


def delta_coefficients(n: int) -> Weight:
    """Coefficients of the null root on the simple roots: (1,1,2,..,2,1,1)."""
    return (1, 1) + (2,) * (n - 3) + (1, 1)


def fundamental(params: AlgebraParams, i: int) -> Weight:
    _check_color(params, i)
    return tuple(1 if j == i else 0 for j in params.colors)


def zero_weight(params: AlgebraParams) -> Weight:
    return (0,) * (params.n + 1)


def weight_add(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def weight_sub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def is_dominant(weight: Weight) -> bool:
    return all(c >= 0 for c in weight)


def dominant_weights_of_level(params: AlgebraParams, level: int) -> list[Weight]:
    """All dominant classical weights of the given level, lexicographic order."""
    n = params.n
    results: list[Weight] = []

    def rec(idx: int, remaining: int, acc: list[int]):
        if idx == n + 1:
            if remaining == 0:
                results.append(tuple(acc))
            return
        mult = 2 if 2 <= idx <= n - 2 else 1
        for a in range(remaining // mult + 1):
            rec(idx + 1, remaining - mult * a, acc + [a])

    rec(0, level, [])
    return results
