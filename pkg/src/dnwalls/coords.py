"""Coordinate model of the level-l perfect crystal for the affine D-series.

Elements are tuples (x_1..x_n | xbar_n..xbar_1) of nonnegative integers with
x_n * xbar_n = 0 and total sum equal to the level.  Operators return None when
undefined (phi/eps exhausted); they never return sentinel tuples.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import AlgebraParams, Weight
from .errors import DomainError, PerfectnessError


@dataclass(frozen=True)
class CoordElement:
    """x[i-1] holds x_i, xbar[i-1] holds xbar_i."""

    x: tuple[int, ...]
    xbar: tuple[int, ...]

    def render(self) -> str:
        left = ",".join(str(v) for v in self.x)
        right = ",".join(str(v) for v in reversed(self.xbar))
        return f"({left}|{right})"

    def total(self) -> int:
        return sum(self.x) + sum(self.xbar)


def validate(params: AlgebraParams, b: CoordElement) -> None:
    n = params.n
    if len(b.x) != n or len(b.xbar) != n:
        raise DomainError(f"element must have {n} coordinates on each side")
    if any(v < 0 for v in b.x + b.xbar):
        raise DomainError("coordinates must be nonnegative")
    if b.x[n - 1] > 0 and b.xbar[n - 1] > 0:
        raise DomainError("x_n and xbar_n cannot both be positive")
    if b.total() != params.level:
        raise DomainError(f"coordinates must sum to the level {params.level}")


@lru_cache(maxsize=None)
def enumerate_crystal(params: AlgebraParams) -> tuple[CoordElement, ...]:
    """All elements, lexicographic on (x_1..x_n, xbar_n..xbar_1)."""
    n, level = params.n, params.level
    out: list[CoordElement] = []

    def rec(pos: int, remaining: int, acc: list[int]):
        if pos == 2 * n:
            if remaining == 0:
                x = tuple(acc[:n])
                xbar_rev = acc[n:]
                if x[n - 1] > 0 and xbar_rev[0] > 0:
                    return
                out.append(CoordElement(x, tuple(reversed(xbar_rev))))
            return
        if pos == 2 * n - 1:
            rec(pos + 1, 0, acc + [remaining])
            return
        for v in range(remaining + 1):
            rec(pos + 1, remaining - v, acc + [v])

    rec(0, level, [])
    return tuple(out)


def _pos(v: int) -> int:
    return v if v > 0 else 0


def phi(params: AlgebraParams, i: int, b: CoordElement) -> int:
    n = params.n
    x, xb = b.x, b.xbar
    if i == 0:
        return xb[0] + _pos(xb[1] - x[1])
    if 1 <= i <= n - 2:
        return x[i - 1] + _pos(xb[i] - x[i])
    if i == n - 1:
        return x[n - 2] + xb[n - 1]
    if i == n:
        return x[n - 2] + x[n - 1]
    raise DomainError(f"color {i} out of range 0..{n}")


def eps(params: AlgebraParams, i: int, b: CoordElement) -> int:
    n = params.n
    x, xb = b.x, b.xbar
    if i == 0:
        return x[0] + _pos(x[1] - xb[1])
    if 1 <= i <= n - 2:
        return xb[i - 1] + _pos(x[i] - xb[i])
    if i == n - 1:
        return xb[n - 2] + x[n - 1]
    if i == n:
        return xb[n - 2] + xb[n - 1]
    raise DomainError(f"color {i} out of range 0..{n}")


def _bump(t: tuple[int, ...], idx: int, d: int) -> tuple[int, ...]:
    return t[:idx] + (t[idx] + d,) + t[idx + 1 :]


def f(params: AlgebraParams, i: int, b: CoordElement) -> CoordElement | None:
    if phi(params, i, b) == 0:
        return None
    n = params.n
    x, xb = b.x, b.xbar
    if i == 0:
        if x[1] >= xb[1]:
            return CoordElement(_bump(x, 1, +1), _bump(xb, 0, -1))
        return CoordElement(_bump(x, 0, +1), _bump(xb, 1, -1))
    if 1 <= i <= n - 2:
        if x[i] >= xb[i]:
            return CoordElement(_bump(_bump(x, i - 1, -1), i, +1), xb)
        return CoordElement(x, _bump(_bump(xb, i, -1), i - 1, +1))
    if i == n - 1:
        if xb[n - 1] == 0:
            return CoordElement(_bump(_bump(x, n - 2, -1), n - 1, +1), xb)
        return CoordElement(x, _bump(_bump(xb, n - 1, -1), n - 2, +1))
    if i == n:
        if x[n - 1] >= 1:
            return CoordElement(_bump(x, n - 1, -1), _bump(xb, n - 2, +1))
        return CoordElement(_bump(x, n - 2, -1), _bump(xb, n - 1, +1))
    raise DomainError(f"color {i} out of range 0..{n}")


def e(params: AlgebraParams, i: int, b: CoordElement) -> CoordElement | None:
    if eps(params, i, b) == 0:
        return None
    n = params.n
    x, xb = b.x, b.xbar
    if i == 0:
        if x[1] > xb[1]:
            return CoordElement(_bump(x, 1, -1), _bump(xb, 0, +1))
        return CoordElement(_bump(x, 0, -1), _bump(xb, 1, +1))
    if 1 <= i <= n - 2:
        if x[i] > xb[i]:
            return CoordElement(_bump(_bump(x, i - 1, +1), i, -1), xb)
        return CoordElement(x, _bump(_bump(xb, i, +1), i - 1, -1))
    if i == n - 1:
        if x[n - 1] >= 1:
            return CoordElement(_bump(_bump(x, n - 2, +1), n - 1, -1), xb)
        return CoordElement(x, _bump(_bump(xb, n - 1, +1), n - 2, -1))
    if i == n:
        if xb[n - 1] == 0:
            return CoordElement(_bump(x, n - 1, +1), _bump(xb, n - 2, -1))
        return CoordElement(_bump(x, n - 2, +1), _bump(xb, n - 1, -1))
    raise DomainError(f"color {i} out of range 0..{n}")


def cwt(params: AlgebraParams, b: CoordElement) -> Weight:
    return tuple(phi(params, i, b) - eps(params, i, b) for i in params.colors)


def phi_vector(params: AlgebraParams, b: CoordElement) -> Weight:
    return tuple(phi(params, i, b) for i in params.colors)


def eps_vector(params: AlgebraParams, b: CoordElement) -> Weight:
    return tuple(eps(params, i, b) for i in params.colors)


def minimal_element(params: AlgebraParams, weight: Weight) -> CoordElement:
    """The unique element whose eps-vector equals the given dominant weight."""
    matches = [
        b for b in enumerate_crystal(params) if eps_vector(params, b) == weight
    ]
    if len(matches) != 1:
        raise PerfectnessError(
            f"expected exactly one element with eps-vector {weight}, "
            f"found {len(matches)}"
        )
    return matches[0]


def element_with_phi_vector(params: AlgebraParams, weight: Weight) -> CoordElement:
    """The unique element whose phi-vector equals the given dominant weight."""
    matches = [
        b for b in enumerate_crystal(params) if phi_vector(params, b) == weight
    ]
    if len(matches) != 1:
        raise PerfectnessError(
            f"expected exactly one element with phi-vector {weight}, "
            f"found {len(matches)}"
        )
    return matches[0]
