"""Signature bookkeeping shared by the wall and path realizations.

A realization lists its columns left to right (descending column index), each
contributing eps-many 1 symbols then phi-many 0 symbols.  Cancelling each
(0,1) pair leaves 1's followed by 0's; the lowering operator acts at the
leftmost surviving 0 and the raising operator at the rightmost surviving 1.

The semi-infinite ground tail telescopes: the phi-vector of each ground column
equals the eps-vector of the one to its right, so everything left of column K
collapses to phi-many 0 symbols attributed to the ground column K itself.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import IntegrityError

# Re-checks every signature against tails extended by one and two ground
# columns; cheap at library scale and guards the telescoping argument.
STABILITY_CHECKS = True


@dataclass(frozen=True)
class Signature:
    one_positions: tuple[int, ...]  # column indices, left to right
    zero_positions: tuple[int, ...]

    @property
    def ones(self) -> int:
        return len(self.one_positions)

    @property
    def zeros(self) -> int:
        return len(self.zero_positions)

    def f_column(self) -> int | None:
        return self.zero_positions[0] if self.zero_positions else None

    def e_column(self) -> int | None:
        return self.one_positions[-1] if self.one_positions else None


def reduce_signature(entries: list[tuple[int, int, int]]) -> Signature:
    """entries: (column index, eps, phi) ordered left to right."""
    surviving_ones: list[int] = []
    zero_stack: list[int] = []
    for col, ones, zeros in entries:
        for _ in range(ones):
            if zero_stack:
                zero_stack.pop()
            else:
                surviving_ones.append(col)
        zero_stack.extend([col] * zeros)
    return Signature(tuple(surviving_ones), tuple(zero_stack))


def tail_signature(
    ground_eps_phi, k_start: int, explicit: list[tuple[int, int, int]]
) -> Signature:
    """Reduce a wall/path signature whose columns >= k_start are ground columns.

    ground_eps_phi(k) must return (eps, phi) of the ground column k.  The tail
    is summarized as a synthetic column k_start contributing only its zeros.
    """

    def reduced(start: int) -> Signature:
        _, zeros = ground_eps_phi(start)
        entries = [(start, 0, zeros)]
        for col in range(start - 1, k_start - 1, -1):
            entries.append((col, *ground_eps_phi(col)))
        entries.extend(explicit)
        return reduce_signature(entries)

    sig = reduced(k_start)
    if STABILITY_CHECKS:
        for extra in (1, 2):
            other = reduced(k_start + extra)
            if other != sig:
                raise IntegrityError(
                    f"tail telescoping unstable: K={k_start} gives {sig}, "
                    f"K+{extra} gives {other}"
                )
    return sig
