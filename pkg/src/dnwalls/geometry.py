"""Physical model of stacked colored blocks: cells, layers, slices, splitting.

A layer is a single column of blocks following the cyclic cell pattern.  The
pattern with period P = 2n-4 is, per cycle: one low dual cell (colors 0,1 as
half-depth triangles), the ascending run of unit-depth cells 2..n-2, one high
dual cell (colors n-1,n), and the descending run n-2..2.  Ascending-run cells
are supporting positions, descending-run cells covering positions; dual cells
count as both.

Layers are encoded as (top cell index t, partial state of cell t); everything
below t is full.  States:

  E    empty top cell
  HS   lower half of a unit-depth cell occupied by a broken half-block
  TL   front (lower-triangle) half-depth block of a dual cell present
  TU   rear (upper-triangle) half-depth block present
  HWU  broken-off upper half of a glued dual whole block, resting in the cell
  HWL  remnant lower half of a glued dual whole block

HWU/HWL are geometrically identical slabs; the tag records which half of the
original whole block they are, which un-splitting and wall validity need.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import DomainError, IntegrityError

PATTERNS = ("A", "B")

# layer states
E = "E"
HS = "HS"
TL = "TL"
TU = "TU"
HWU = "HWU"
HWL = "HWL"

HALF_STATES = (HS, HWU, HWL)
DUAL_CLASSES = ("zo", "nn")


def period(n: int) -> int:
    return 2 * n - 4


@dataclass(frozen=True)
class Cell:
    """kind is 'zo', 'nn', or 'mid'; mid cells carry a color and a role."""

    kind: str
    color: int | None = None
    role: str | None = None  # 'sup' or 'cov' for mid cells


def cell_at(n: int, m: int) -> Cell:
    if m < 0:
        raise DomainError("cell index must be nonnegative")
    r = m % period(n)
    if r == 0:
        return Cell("zo")
    if r <= n - 3:
        return Cell("mid", r + 1, "sup")
    if r == n - 2:
        return Cell("nn")
    return Cell("mid", 2 * n - 3 - r, "cov")


def dual_class_of_color(n: int, i: int) -> str:
    if i in (0, 1):
        return "zo"
    if i in (n - 1, n):
        return "nn"
    raise DomainError(f"color {i} is not a half-depth color")


def front_color(n: int, pattern: str, kind: str) -> int:
    """Color of the front (lower-triangle) block in a dual cell."""
    if pattern not in PATTERNS:
        raise DomainError(f"unknown pattern {pattern!r}")
    if kind == "zo":
        return 0 if pattern == "A" else 1
    if kind == "nn":
        return n - 1 if pattern == "A" else n
    raise DomainError(f"{kind!r} is not a dual cell kind")


def rear_color(n: int, pattern: str, kind: str) -> int:
    pair = (0, 1) if kind == "zo" else (n - 1, n)
    fc = front_color(n, pattern, kind)
    return pair[0] if fc == pair[1] else pair[1]


def triangle_state(n: int, pattern: str, kind: str, color: int) -> str:
    """Layer state for a lone half-depth block of the given color."""
    if color == front_color(n, pattern, kind):
        return TL
    if color == rear_color(n, pattern, kind):
        return TU
    raise DomainError(f"color {color} does not belong to a {kind} cell")


def triangle_color(n: int, pattern: str, kind: str, state: str) -> int:
    return front_color(n, pattern, kind) if state == TL else rear_color(n, pattern, kind)


@dataclass(frozen=True)
class Layer:
    t: int
    state: str = E

    def volume(self) -> int:
        """Occupied volume in half-cell units."""
        return 2 * self.t + (0 if self.state == E else 1)


def validate_layer(n: int, layer: Layer) -> None:
    if layer.t < 0:
        raise DomainError("layer top index must be nonnegative")
    if layer.state == E:
        return
    kind = cell_at(n, layer.t).kind
    if layer.state == HS:
        if kind != "mid":
            raise DomainError("half-slab state requires a unit-depth cell")
    elif layer.state in (TL, TU, HWU, HWL):
        if kind == "mid":
            raise DomainError(f"state {layer.state} requires a dual cell")
    else:
        raise DomainError(f"unknown layer state {layer.state!r}")


def layer_plus_delta(n: int, layer: Layer) -> Layer:
    return replace(layer, t=layer.t + period(n))


def layer_minus_delta(n: int, layer: Layer) -> Layer | None:
    if layer.t < period(n):
        return None
    return replace(layer, t=layer.t - period(n))


def cell_content(layer: Layer, m: int) -> str:
    """'F' for a full cell, the layer state at the top cell, 'E' above."""
    if m < layer.t:
        return "F"
    if m == layer.t:
        return layer.state
    return E


@dataclass(frozen=True)
class Slice:
    """Ordered layers, front (index 0) to rear; all follow one pattern."""

    n: int
    pattern: str
    layers: tuple[Layer, ...]

    @property
    def level(self) -> int:
        return len(self.layers)

    def volume(self) -> int:
        return sum(layer.volume() for layer in self.layers)


def validate_slice(s: Slice, check_split_form: bool = True) -> None:
    if s.pattern not in PATTERNS:
        raise DomainError(f"unknown pattern {s.pattern!r}")
    if not s.layers:
        raise DomainError("a slice needs at least one layer")
    for layer in s.layers:
        validate_layer(s.n, layer)
    vols = [layer.volume() for layer in s.layers]
    if any(a > b for a, b in zip(vols, vols[1:])):
        raise DomainError(f"layer volumes must be nondecreasing, got {vols}")
    if vols[-1] > vols[0] + 2 * period(s.n):
        raise DomainError("rear layer exceeds front layer by more than one cycle")
    for cls in DUAL_CLASSES:
        ups = sum(
            1
            for layer in s.layers
            if layer.state == HWU and cell_at(s.n, layer.t).kind == cls
        )
        downs = sum(
            1
            for layer in s.layers
            if layer.state == HWL and cell_at(s.n, layer.t).kind == cls
        )
        if ups != downs:
            raise IntegrityError(f"unpairable {cls} half (uppers {ups}, lowers {downs})")
    if check_split_form and splittable_classes(s):
        raise DomainError(f"slice admits further splitting: {splittable_classes(s)}")


def is_preslice(s: Slice) -> bool:
    """Unbroken layers forming the strict cell-wise inclusion chain."""
    if any(layer.state in HALF_STATES for layer in s.layers):
        return False

    def contains(big: Layer, small: Layer) -> bool:
        if small.t < big.t:
            return True
        if small.t > big.t:
            return False
        return small.state == E or small.state == big.state

    chain = list(s.layers) + [layer_plus_delta(s.n, s.layers[0])]
    return all(contains(b, a) for a, b in zip(chain, chain[1:]))


# --- adding and removing whole blocks on a single layer ---------------------


def add_block(n: int, pattern: str, layer: Layer, color: int) -> Layer | None:
    """Place one whole block of the given color on top; None if it does not fit."""
    cell = cell_at(n, layer.t)
    if layer.state == E:
        if cell.kind == "mid":
            return Layer(layer.t + 1, E) if cell.color == color else None
        if color in (front_color(n, pattern, cell.kind), rear_color(n, pattern, cell.kind)):
            return Layer(layer.t, triangle_state(n, pattern, cell.kind, color))
        return None
    if layer.state in (TL, TU) and cell.kind != "mid":
        present = triangle_color(n, pattern, cell.kind, layer.state)
        other = front_color(n, pattern, cell.kind) + rear_color(n, pattern, cell.kind) - present
        if color == other:
            return Layer(layer.t + 1, E)
    return None


def remove_block(n: int, pattern: str, layer: Layer, color: int) -> Layer | None:
    """Exact inverse of add_block."""
    if layer.state == E:
        if layer.t == 0:
            return None
        below = cell_at(n, layer.t - 1)
        if below.kind == "mid":
            return Layer(layer.t - 1, E) if below.color == color else None
        fc, rc = front_color(n, pattern, below.kind), rear_color(n, pattern, below.kind)
        if color == fc:
            return Layer(layer.t - 1, TU)
        if color == rc:
            return Layer(layer.t - 1, TL)
        return None
    if layer.state in (TL, TU):
        cell = cell_at(n, layer.t)
        if color == triangle_color(n, pattern, cell.kind, layer.state):
            return Layer(layer.t, E)
    return None


# --- splitting ---------------------------------------------------------------


def _replace_layer(s: Slice, idx: int, layer: Layer) -> Slice:
    layers = s.layers[:idx] + (layer,) + s.layers[idx + 1 :]
    return replace(s, layers=layers)


def _split_candidates(s: Slice, cls, mirror: bool):
    """(donors, receivers) as (layer index, cell index) lists for one class."""
    n = s.n
    donors: list[tuple[int, int]] = []
    receivers: list[tuple[int, int]] = []
    for idx, layer in enumerate(s.layers):
        if layer.state != E:
            continue
        if cls in DUAL_CLASSES:
            if layer.t >= 1 and cell_at(n, layer.t - 1).kind == cls:
                donors.append((idx, layer.t - 1))
            if cell_at(n, layer.t).kind == cls:
                receivers.append((idx, layer.t))
        else:
            block_role = "sup" if mirror else "cov"
            slot_role = "cov" if mirror else "sup"
            if layer.t >= 1:
                below = cell_at(n, layer.t - 1)
                if below.kind == "mid" and below.color == cls and below.role == block_role:
                    donors.append((idx, layer.t - 1))
            here = cell_at(n, layer.t)
            if here.kind == "mid" and here.color == cls and here.role == slot_role:
                receivers.append((idx, layer.t))
    return donors, receivers


def split(s: Slice, cls, mirror: bool = False) -> Slice | None:
    """Break the top half of one whole block of the class into a matching slot.

    Donor: fore-most layer among whole-block tops at the higher height.
    Receiver: rear-most layer among full slots at the lower height.  The
    mirror variant swaps the covering/supporting roles; for the dual classes
    the two roles coincide and the mirror call returns None.
    """
    if cls in DUAL_CLASSES and mirror:
        return None
    donors, receivers = _split_candidates(s, cls, mirror)
    if not donors or not receivers:
        return None
    d_idx, d_cell = min(donors, key=lambda p: (-p[1], p[0]))
    r_idx, r_cell = min(receivers, key=lambda p: (p[1], -p[0]))
    half = HS if cls not in DUAL_CLASSES else None
    out = _replace_layer(s, d_idx, Layer(d_cell, half or HWL))
    out = _replace_layer(out, r_idx, Layer(r_cell, half or HWU))
    return out


def split_classes(n: int) -> list:
    # dual classes first: dual and unit-depth splits can compete for the same
    # layer, and the operator transport checks single out the dual-first form
    return ["zo", "nn"] + list(range(2, n - 1))


def splittable_classes(s: Slice) -> list:
    out = []
    for cls in split_classes(s.n):
        for mirror in (False, True):
            donors, receivers = _split_candidates(s, cls, mirror)
            if cls in DUAL_CLASSES and mirror:
                continue
            if donors and receivers:
                out.append(cls)
                break
    return out


def split_all(s: Slice) -> Slice:
    """Canonical split form: classes in cycle order, base variant before mirror."""
    cur = s
    while True:
        moved = False
        for cls in split_classes(s.n):
            for mirror in (False, True):
                while (nxt := split(cur, cls, mirror)) is not None:
                    cur = nxt
                    moved = True
        if not moved:
            return cur


def unsplit_duals(s: Slice) -> Slice:
    """Undo every dual-block split; unique because the halves carry their tag."""
    for cls in DUAL_CLASSES:
        ups = sum(
            1 for L in s.layers if L.state == HWU and cell_at(s.n, L.t).kind == cls
        )
        downs = sum(
            1 for L in s.layers if L.state == HWL and cell_at(s.n, L.t).kind == cls
        )
        if ups != downs:
            raise IntegrityError(f"unpairable {cls} half")
    layers = []
    for layer in s.layers:
        if layer.state == HWU:
            layers.append(Layer(layer.t, E))
        elif layer.state == HWL:
            layers.append(Layer(layer.t + 1, E))
        else:
            layers.append(layer)
    return replace(s, layers=tuple(layers))


# --- delta shifts ------------------------------------------------------------


def slice_plus_delta(s: Slice) -> Slice:
    first, rest = s.layers[0], s.layers[1:]
    return replace(s, layers=rest + (layer_plus_delta(s.n, first),))


def slice_minus_delta(s: Slice) -> Slice | None:
    last = layer_minus_delta(s.n, s.layers[-1])
    if last is None:
        return None
    return replace(s, layers=(last,) + s.layers[:-1])


def shift_all(s: Slice, k: int) -> Slice:
    """Add k full cycles to every layer (equals k*level delta shifts)."""
    p = period(s.n)
    layers = tuple(replace(L, t=L.t + k * p) for L in s.layers)
    if any(L.t < 0 for L in layers):
        raise DomainError("shift would push a layer below the floor")
    return replace(s, layers=layers)


# --- rendering ---------------------------------------------------------------

_GLYPHS = {HS: "-", HWU: "-", HWL: "-", TL: "/", TU: "\\"}


def render_slice(s: Slice, min_rows: int = 0) -> str:
    """Side view, rear layer left, front layer right, one char column per layer."""
    rows = max(
        min_rows, max(2 * L.t + (2 if L.state in (TL, TU) else 1) for L in s.layers)
    )
    lines = []
    for h in range(rows - 1, -1, -1):
        line = []
        for layer in reversed(s.layers):
            m, half = divmod(h, 2)
            content = cell_content(layer, m)
            if content == "F":
                line.append("#")
            elif content in (TL, TU):
                line.append(_GLYPHS[content])
            elif content in HALF_STATES and half == 0:
                line.append(_GLYPHS[content])
            else:
                line.append(".")
        lines.append("".join(line))
    return "\n".join(lines)
