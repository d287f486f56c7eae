"""Crystal structure on equivalence classes of slices, and the coordinate bijection.

A class is represented by the unique delta-reduced slice (rear layer's top
below one full cycle).  Operators are computed on a lifted copy in which every
layer is one full cycle above the floor, so that the top block of every layer
is visible; this is what makes the action commute with delta shifts.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import AlgebraParams, Weight
from .coords import CoordElement
from . import coords
from .errors import DomainError, IntegrityError
from .geometry import (
    DUAL_CLASSES,
    E,
    HS,
    HWL,
    HWU,
    TL,
    TU,
    Cell,
    Layer,
    Slice,
    cell_at,
    dual_class_of_color,
    front_color,
    period,
    rear_color,
    shift_all,
    slice_minus_delta,
    slice_plus_delta,
    split_all,
    triangle_color,
    triangle_state,
    unsplit_duals,
    validate_slice,
)


def canonicalize_slice(s: Slice) -> Slice:
    while s.layers[-1].t >= period(s.n):
        s = slice_minus_delta(s)
    return s


@dataclass(frozen=True)
class SliceClass:
    """Delta-equivalence class, held by its canonical representative."""

    rep: Slice

    @staticmethod
    def of(s: Slice) -> "SliceClass":
        return SliceClass(canonicalize_slice(s))

    @property
    def pattern(self) -> str:
        return self.rep.pattern


@dataclass(frozen=True)
class SegmentCounts:
    """Multiplicities of the layer-top profiles making up a slice.

    y[i-1] counts plain supporting profiles for color i, ybar[i-1] the covering
    ones; star counts split pairs, indexed 'zo', 2..n-2, 'nn'.
    """

    n: int
    y: tuple[int, ...]
    ybar: tuple[int, ...]
    star_zo: int
    star_mid: tuple[int, ...]  # colors 2..n-2
    star_nn: int

    def star(self, cls) -> int:
        if cls == "zo":
            return self.star_zo
        if cls == "nn":
            return self.star_nn
        return self.star_mid[cls - 2]


# --- segment profiles ---------------------------------------------------------

_RANK = {HWU: 0, HWL: 2}


def _seg_rank(state: str) -> int:
    return _RANK.get(state, 1)


def _plain_segment(n: int, pattern: str, i: int, barred: bool) -> Layer:
    """Layer-top profile contributing to y_i (barred=False) or ybar_i."""
    if not barred:
        if i == 1:
            return Layer(0, triangle_state(n, pattern, "zo", 0))
        if 2 <= i <= n - 1:
            return Layer(i - 1, E)
        if i == n:
            return Layer(n - 2, triangle_state(n, pattern, "nn", n - 1))
    else:
        if i == 1:
            return Layer(0, triangle_state(n, pattern, "zo", 1))
        if 2 <= i <= n - 2:
            return Layer(2 * n - 2 - i, E)
        if i == n - 1:
            return Layer(n - 1, E)
        if i == n:
            return Layer(n - 2, triangle_state(n, pattern, "nn", n))
    raise DomainError(f"no segment for index {i}")


def _pair_segments(n: int, cls) -> tuple[Layer, Layer]:
    """(receiver, donor) profiles of one split pair of the class."""
    if cls == "zo":
        return Layer(0, HWU), Layer(0, HWL)
    if cls == "nn":
        return Layer(n - 2, HWU), Layer(n - 2, HWL)
    return Layer(cls - 1, HS), Layer(2 * n - 3 - cls, HS)


def to_slice(params: AlgebraParams, b: CoordElement, pattern: str = "A") -> SliceClass:
    """Geometric class of a coordinate element (the canonical pasting)."""
    coords.validate(params, b)
    n = params.n
    x, xb = b.x, b.xbar
    layers: list[Layer] = []
    for i in range(1, n + 1):
        extra = max(0, x[i - 1] - xb[i - 1])
        layers += [_plain_segment(n, pattern, i, False)] * extra
        extra_bar = max(0, xb[i - 1] - x[i - 1])
        layers += [_plain_segment(n, pattern, i, True)] * extra_bar
    star_classes = ["zo"] + list(range(2, n - 1)) + ["nn"]
    for cls in star_classes:
        i = 1 if cls == "zo" else (n - 1 if cls == "nn" else cls)
        count = min(x[i - 1], xb[i - 1])
        recv, donor = _pair_segments(n, cls)
        layers += [recv] * count + [donor] * count
    layers.sort(key=lambda L: (L.volume(), _seg_rank(L.state)))
    s = Slice(n, pattern, tuple(layers))
    validate_slice(s)
    return SliceClass.of(s)


def decompose(c: SliceClass) -> SegmentCounts:
    """Classify every layer top back into segment profiles."""
    s = c.rep
    n = s.n
    p = period(n)
    y = [0] * n
    ybar = [0] * n
    star_u = {"zo": 0, "nn": 0}
    star_l = {"zo": 0, "nn": 0}
    mid_u = [0] * max(0, n - 3)
    mid_l = [0] * max(0, n - 3)
    for layer in s.layers:
        r = layer.t % p
        cell = cell_at(n, r)
        if layer.state == E:
            if cell.kind == "zo":
                ybar[1] += 1  # full cycles read as covering-2 profiles
            elif cell.kind == "nn":
                y[n - 2] += 1
            elif cell.role == "sup":
                y[cell.color - 1] += 1
            else:
                ybar[cell.color] += 1  # slot for covering (color), top is color+1
        elif layer.state in (TL, TU):
            color = triangle_color(n, s.pattern, cell.kind, layer.state)
            if color == 0:
                y[0] += 1
            elif color == 1:
                ybar[0] += 1
            elif color == n - 1:
                y[n - 1] += 1
            else:
                ybar[n - 1] += 1
        elif layer.state == HS:
            if cell.role == "sup":
                mid_u[cell.color - 2] += 1
            else:
                mid_l[cell.color - 2] += 1
        elif layer.state == HWU:
            star_u[cell.kind] += 1
        elif layer.state == HWL:
            star_l[cell.kind] += 1
        else:
            raise IntegrityError(f"unclassifiable layer {layer}")
    for cls in DUAL_CLASSES:
        if star_u[cls] != star_l[cls]:
            raise IntegrityError(f"unbalanced {cls} halves")
    if mid_u != mid_l:
        raise IntegrityError("unbalanced unit-depth halves")
    counts = SegmentCounts(
        n, tuple(y), tuple(ybar), star_u["zo"], tuple(mid_u), star_u["nn"]
    )
    for i in range(n):
        if counts.y[i] and counts.ybar[i]:
            raise IntegrityError(f"profiles y_{i+1} and ybar_{i+1} coexist")
    total = 2 * (counts.star_zo + sum(counts.star_mid) + counts.star_nn) + sum(
        counts.y
    ) + sum(counts.ybar)
    if total != s.level:
        raise IntegrityError("segment counts do not add up to the level")
    return counts


def to_coords(params: AlgebraParams, c: SliceClass) -> CoordElement:
    """Inverse of to_slice."""
    n = params.n
    if c.rep.n != n or c.rep.level != params.level:
        raise DomainError("class does not match the algebra parameters")
    sc = decompose(c)
    x = [0] * n
    xb = [0] * n
    x[0] = sc.y[0] + sc.star_zo
    xb[0] = sc.ybar[0] + sc.star_zo
    for i in range(2, n - 1):
        x[i - 1] = sc.y[i - 1] + sc.star_mid[i - 2]
        xb[i - 1] = sc.ybar[i - 1] + sc.star_mid[i - 2]
    x[n - 2] = sc.y[n - 2] + sc.star_nn
    xb[n - 2] = sc.ybar[n - 2] + sc.star_nn
    x[n - 1] = sc.y[n - 1]
    xb[n - 1] = sc.ybar[n - 1]
    return CoordElement(tuple(x), tuple(xb))


# --- Kashiwara operators -------------------------------------------------------

_MIDDLE_DELTA = 2  # half-units added/removed by a unit-depth operator step
_END_DELTA = 1


def _replace(s: Slice, idx: int, layer: Layer) -> Slice:
    layers = s.layers[:idx] + (layer,) + s.layers[idx + 1 :]
    return Slice(s.n, s.pattern, layers)


def _rear_lower(cands):
    """(index, cell) with minimal cell, then maximal layer index."""
    return min(cands, key=lambda p: (p[1], -p[0]))


def _fore_higher(cands):
    return min(cands, key=lambda p: (-p[1], p[0]))


def _mid_slots(s: Slice, i: int, role: str, half: bool):
    want = HS if half else E
    out = []
    for idx, layer in enumerate(s.layers):
        if layer.state != want:
            continue
        cell = cell_at(s.n, layer.t)
        if cell.kind == "mid" and cell.color == i and cell.role == role:
            out.append((idx, layer.t))
    return out


def _mid_blocks(s: Slice, i: int, role: str, half: bool):
    out = []
    for idx, layer in enumerate(s.layers):
        if half:
            if layer.state != HS:
                continue
            cell = cell_at(s.n, layer.t)
            if cell.kind == "mid" and cell.color == i and cell.role == role:
                out.append((idx, layer.t))
        else:
            if layer.state != E or layer.t < 1:
                continue
            cell = cell_at(s.n, layer.t - 1)
            if cell.kind == "mid" and cell.color == i and cell.role == role:
                out.append((idx, layer.t - 1))
    return out


def _f_middle(s: Slice, i: int) -> Slice | None:
    cov_full = _mid_slots(s, i, "cov", half=False)
    sup_full = _mid_slots(s, i, "sup", half=False)
    if cov_full and sup_full:
        idx, cell = _rear_lower(cov_full)
        s = _replace(s, idx, Layer(cell, HS))
        idx, cell = _rear_lower(_mid_slots(s, i, "sup", half=False))
        return _replace(s, idx, Layer(cell, HS))
    if cov_full or sup_full:
        role = "cov" if cov_full else "sup"
        idx, cell = _rear_lower(cov_full or sup_full)
        s = _replace(s, idx, Layer(cell, HS))
        idx, cell = _rear_lower(_mid_slots(s, i, role, half=True))
        return _replace(s, idx, Layer(cell + 1, E))
    cov_half = _mid_slots(s, i, "cov", half=True)
    sup_half = _mid_slots(s, i, "sup", half=True)
    if cov_half or sup_half:
        if len(cov_half) != len(sup_half):
            raise IntegrityError("covering/supporting half-slot counts differ")
        idx, cell = _rear_lower(cov_half)
        s = _replace(s, idx, Layer(cell + 1, E))
        idx, cell = _rear_lower(_mid_slots(s, i, "sup", half=True))
        return _replace(s, idx, Layer(cell + 1, E))
    return None


def _e_middle(s: Slice, i: int) -> Slice | None:
    cov_full = _mid_blocks(s, i, "cov", half=False)
    sup_full = _mid_blocks(s, i, "sup", half=False)
    if cov_full and sup_full:
        idx, cell = _fore_higher(cov_full)
        s = _replace(s, idx, Layer(cell, HS))
        idx, cell = _fore_higher(_mid_blocks(s, i, "sup", half=False))
        return _replace(s, idx, Layer(cell, HS))
    if cov_full or sup_full:
        role = "cov" if cov_full else "sup"
        idx, cell = _fore_higher(cov_full or sup_full)
        s = _replace(s, idx, Layer(cell, HS))
        idx, cell = _fore_higher(_mid_blocks(s, i, role, half=True))
        return _replace(s, idx, Layer(cell, E))
    cov_half = _mid_blocks(s, i, "cov", half=True)
    sup_half = _mid_blocks(s, i, "sup", half=True)
    if cov_half or sup_half:
        if len(cov_half) != len(sup_half):
            raise IntegrityError("covering/supporting half-block counts differ")
        idx, cell = _fore_higher(cov_half)
        s = _replace(s, idx, Layer(cell, E))
        idx, cell = _fore_higher(_mid_blocks(s, i, "sup", half=True))
        return _replace(s, idx, Layer(cell, E))
    return None


def _end_slots(s: Slice, i: int):
    """Layers whose top dual cell can still take the color i."""
    n = s.n
    cls = dual_class_of_color(n, i)
    out = []
    for idx, layer in enumerate(s.layers):
        cell = cell_at(n, layer.t)
        if cell.kind != cls:
            continue
        if layer.state == E:
            out.append((idx, layer.t))
        elif layer.state in (TL, TU):
            if triangle_color(n, s.pattern, cls, layer.state) != i:
                out.append((idx, layer.t))
    return out


def _end_blocks(s: Slice, i: int):
    """Removable blocks of the color i: lone triangles or tops of complete cells."""
    n = s.n
    cls = dual_class_of_color(n, i)
    out = []
    for idx, layer in enumerate(s.layers):
        if layer.state in (TL, TU):
            cell = cell_at(n, layer.t)
            if cell.kind == cls and triangle_color(n, s.pattern, cls, layer.state) == i:
                out.append((idx, layer.t))
        elif layer.state == E and layer.t >= 1:
            if cell_at(n, layer.t - 1).kind == cls:
                out.append((idx, layer.t - 1))
    return out


def _f_end(s: Slice, i: int) -> Slice | None:
    s = unsplit_duals(s)
    slots = _end_slots(s, i)
    if not slots:
        return None
    idx, cell = _rear_lower(slots)
    layer = s.layers[idx]
    cls = dual_class_of_color(s.n, i)
    if layer.state == E:
        new = Layer(cell, triangle_state(s.n, s.pattern, cls, i))
    else:
        new = Layer(cell + 1, E)
    return split_all(_replace(s, idx, new))


def _e_end(s: Slice, i: int) -> Slice | None:
    s = unsplit_duals(s)
    blocks = _end_blocks(s, i)
    if not blocks:
        return None
    idx, cell = _fore_higher(blocks)
    layer = s.layers[idx]
    cls = dual_class_of_color(s.n, i)
    if layer.state in (TL, TU):
        new = Layer(cell, E)
    else:
        pair = (0, 1) if cls == "zo" else (s.n - 1, s.n)
        other = pair[0] + pair[1] - i
        new = Layer(cell, triangle_state(s.n, s.pattern, cls, other))
    return split_all(_replace(s, idx, new))


def _apply_visible(params: AlgebraParams, i: int, s: Slice, lower: bool) -> Slice | None:
    """Operator on a slice in which every layer top is visible (t >= 1)."""
    n = params.n
    if not 0 <= i <= n:
        raise DomainError(f"color {i} out of range 0..{n}")
    if any(L.t < 1 for L in s.layers):
        raise IntegrityError("operator applied to a slice with hidden tops")
    if 2 <= i <= n - 2:
        out = _f_middle(s, i) if lower else _e_middle(s, i)
    else:
        out = _f_end(s, i) if lower else _e_end(s, i)
    if out is not None:
        validate_slice(out)
    return out


def concrete_f(params: AlgebraParams, i: int, s: Slice) -> Slice | None:
    """Lowering operator on a concrete slice; result volume-pinned to vol + step."""
    return _concrete(params, i, s, lower=True)


def concrete_e(params: AlgebraParams, i: int, s: Slice) -> Slice | None:
    return _concrete(params, i, s, lower=False)


def _concrete(params: AlgebraParams, i: int, s: Slice, lower: bool) -> Slice | None:
    out = _apply_visible(params, i, shift_all(s, 1), lower)
    if out is None:
        return None
    step = _MIDDLE_DELTA if 2 <= i <= params.n - 2 else _END_DELTA
    target = s.volume() + (step if lower else -step)
    return _pin_volume(out, target)


def _pin_volume(s: Slice, target: int) -> Slice:
    rep = canonicalize_slice(s)
    diff = target - rep.volume()
    cycle = 2 * period(rep.n)
    if diff < 0 or diff % cycle:
        raise IntegrityError(
            f"no representative of volume {target} (canonical volume {rep.volume()})"
        )
    for _ in range(diff // cycle):
        rep = slice_plus_delta(rep)
    return rep


def f(params: AlgebraParams, i: int, c: SliceClass) -> SliceClass | None:
    out = _apply_visible(params, i, shift_all(c.rep, 1), lower=True)
    return None if out is None else SliceClass.of(out)


def e(params: AlgebraParams, i: int, c: SliceClass) -> SliceClass | None:
    out = _apply_visible(params, i, shift_all(c.rep, 1), lower=False)
    return None if out is None else SliceClass.of(out)


def _string_guard(params: AlgebraParams) -> int:
    return params.level * (2 * period(params.n) + 2)


@lru_cache(maxsize=None)
def _phi_cached(params: AlgebraParams, i: int, c: SliceClass) -> int:
    count = 0
    cur = c
    guard = _string_guard(params)
    while (nxt := f(params, i, cur)) is not None:
        cur = nxt
        count += 1
        if count > guard:
            raise IntegrityError(f"phi_{i} iteration exceeded {guard} steps")
    return count


@lru_cache(maxsize=None)
def _eps_cached(params: AlgebraParams, i: int, c: SliceClass) -> int:
    count = 0
    cur = c
    guard = _string_guard(params)
    while (nxt := e(params, i, cur)) is not None:
        cur = nxt
        count += 1
        if count > guard:
            raise IntegrityError(f"eps_{i} iteration exceeded {guard} steps")
    return count


def phi(params: AlgebraParams, i: int, c: SliceClass) -> int:
    return _phi_cached(params, i, c)


def eps(params: AlgebraParams, i: int, c: SliceClass) -> int:
    return _eps_cached(params, i, c)


def cwt(params: AlgebraParams, c: SliceClass) -> Weight:
    return tuple(phi(params, i, c) - eps(params, i, c) for i in params.colors)


# --- transport oracles (through the coordinate model) --------------------------


def f_transport(params: AlgebraParams, i: int, c: SliceClass) -> SliceClass | None:
    b = coords.f(params, i, to_coords(params, c))
    return None if b is None else to_slice(params, b, c.pattern)


def e_transport(params: AlgebraParams, i: int, c: SliceClass) -> SliceClass | None:
    b = coords.e(params, i, to_coords(params, c))
    return None if b is None else to_slice(params, b, c.pattern)


def describe(c: SliceClass) -> str:
    layers = " ".join(f"{L.t}:{L.state}" for L in c.rep.layers)
    return f"[{layers}]"
