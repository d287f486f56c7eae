"""Young walls: interlocking rows of slices carrying the highest-weight crystal.

A wall stores the finitely many columns that differ from its ground wall
(column 0 is the right-most); every column beyond the prefix is a ground
column.  Adjacent columns alternate the two stacking patterns.  Operators work
through the class-level slice operators and pin the concrete column by its
volume, which is exactly "add/remove this block here".
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .algebra import (
    AlgebraParams,
    Weight,
    is_dominant,
    level_of,
    zero_weight,
)
from . import coords, paths, slices
from .coords import CoordElement
from .errors import DomainError, IntegrityError
from .geometry import (
    E,
    HS,
    HWL,
    HWU,
    TL,
    TU,
    Layer,
    Slice,
    cell_content,
    render_slice,
    slice_minus_delta,
)
from .signatures import Signature, tail_signature
from .slices import SliceClass

# Validity/properness/reducedness assertions after every operator application.
OPERATOR_CHECKS = True

_ground_col_cache: dict[tuple[AlgebraParams, Weight, int], Slice] = {}


def pattern_for_column(k: int) -> str:
    return "A" if k % 2 == 0 else "B"


def ground_column(params: AlgebraParams, lam: Weight, k: int) -> Slice:
    """Concrete k-th column of the ground wall (canonical delta position)."""
    key = (params, lam, k)
    if key not in _ground_col_cache:
        b = paths.ground_element(params, lam, k)
        col = slices.to_slice(params, b, pattern_for_column(k)).rep
        for layer in col.layers:
            # a whole-block top would repeat forever and break properness
            if layer.state == E and layer.t >= 1:
                raise IntegrityError(
                    f"ground column {k} for {lam} has a unit-depth integer top"
                )
        _ground_col_cache[key] = col
    return _ground_col_cache[key]


@dataclass(frozen=True)
class Wall:
    params: AlgebraParams
    lam: Weight
    columns: tuple[Slice, ...]  # prefix only, column 0 first
    counts: tuple[int, ...]  # blocks added per color

    def column(self, k: int) -> Slice:
        if k < len(self.columns):
            return self.columns[k]
        return ground_column(self.params, self.lam, k)

    @property
    def prefix_len(self) -> int:
        return len(self.columns)


def ground_wall(params: AlgebraParams, lam: Weight) -> Wall:
    if not is_dominant(lam):
        raise DomainError(f"highest weight must be dominant, got {lam}")
    if level_of(params, lam) != params.level:
        raise DomainError(
            f"weight {lam} has level {level_of(params, lam)}, expected {params.level}"
        )
    ground_column(params, lam, 0)  # force construction checks early
    ground_column(params, lam, 1)
    return Wall(params, lam, (), zero_weight(params))


def _normalize(w: Wall) -> Wall:
    cols = list(w.columns)
    while cols and cols[-1] == ground_column(w.params, w.lam, len(cols) - 1):
        cols.pop()
    return replace(w, columns=tuple(cols))


# --- validity ----------------------------------------------------------------

# For each content of a layer of the left column, the contents the right
# column may show at the same cell.  Broken halves rest in the lower half of
# their cell; TL/TU are full-height half-depth blocks; F dominates everything.
_ALLOWED_RIGHT = {
    "F": {"F"},
    HS: {"F", HS},
    TL: {"F", TL, HWL},
    TU: {"F", TU, HWL},
    HWU: {"F", TL, TU, HWU, HWL},
    HWL: {"F", HWU, HWL},
}


def _pair_valid(left: Slice, right: Slice) -> bool:
    for lay_l, lay_r in zip(left.layers, right.layers, strict=True):
        top = max(lay_l.t, lay_r.t) + 1
        for m in range(top + 1):
            cl = cell_content(lay_l, m)
            if cl == E:
                continue
            if cell_content(lay_r, m) not in _ALLOWED_RIGHT[cl]:
                return False
    return True


def is_valid(w: Wall) -> bool:
    k_top = w.prefix_len
    for k in range(k_top):
        col = w.column(k)
        if col.pattern != pattern_for_column(k) or col.level != w.params.level:
            return False
        try:
            slices.validate_slice(col)
        except (DomainError, IntegrityError):
            return False
    # adjacent pairs across the prefix plus a ground pair of each parity
    for k in range(max(k_top, 2)):
        if not _pair_valid(w.column(k + 1), w.column(k)):
            return False
    return True


def is_proper(w: Wall) -> bool:
    """No two unit-depth integer-height layer tops at equal height, per layer."""
    level = w.params.level
    span = w.prefix_len + 2  # ground columns contribute no such tops
    for layer_idx in range(level):
        seen: set[int] = set()
        for k in range(span):
            layer = w.column(k).layers[layer_idx]
            if layer.state == E and layer.t >= 1:
                if layer.t in seen:
                    return False
                seen.add(layer.t)
    return True


def removable_delta(w: Wall, k: int) -> bool:
    if k >= w.prefix_len:
        return False  # ground columns are delta-reduced
    shrunk = slice_minus_delta(w.columns[k])
    if shrunk is None:
        return False
    cols = list(w.columns)
    cols[k] = shrunk
    cand = _normalize(replace(w, columns=tuple(cols)))
    return is_valid(cand) and is_proper(cand)


def is_reduced(w: Wall) -> bool:
    return not any(removable_delta(w, k) for k in range(w.prefix_len))


def reduce_deltas(w: Wall) -> Wall:
    """Remove removable delta-columns, scanning left to right, until reduced."""
    changed = True
    while changed:
        changed = False
        for k in range(w.prefix_len - 1, -1, -1):
            if removable_delta(w, k):
                cols = list(w.columns)
                cols[k] = slice_minus_delta(cols[k])
                w = _normalize(replace(w, columns=tuple(cols)))
                changed = True
                break
    return w


# --- signature and operators ---------------------------------------------------


def _col_class(col: Slice) -> SliceClass:
    return SliceClass.of(col)


def signature(w: Wall, i: int) -> Signature:
    params = w.params
    k_start = w.prefix_len

    def ground_eps_phi(k: int) -> tuple[int, int]:
        c = _col_class(ground_column(params, w.lam, k))
        return slices.eps(params, i, c), slices.phi(params, i, c)

    explicit = []
    for j in range(k_start - 1, -1, -1):
        c = _col_class(w.columns[j])
        explicit.append((j, slices.eps(params, i, c), slices.phi(params, i, c)))
    return tail_signature(ground_eps_phi, k_start, explicit)


def _bump_counts(counts: tuple[int, ...], i: int, d: int) -> tuple[int, ...]:
    c = list(counts)
    c[i] += d
    return tuple(c)


def _post_check(w: Wall, was_reduced: bool) -> None:
    if not OPERATOR_CHECKS:
        return
    if not is_valid(w):
        raise IntegrityError("operator produced an invalid wall")
    if not is_proper(w):
        raise IntegrityError("operator produced an improper wall")
    if was_reduced and not is_reduced(w):
        raise IntegrityError("operator broke reducedness")


def f(params: AlgebraParams, i: int, w: Wall) -> Wall | None:
    col_idx = signature(w, i).f_column()
    if col_idx is None:
        return None
    was_reduced = is_reduced(w) if OPERATOR_CHECKS else False
    cols = list(w.columns)
    while len(cols) <= col_idx:
        cols.append(ground_column(params, w.lam, len(cols)))
    new_col = slices.concrete_f(params, i, cols[col_idx])
    if new_col is None:
        raise IntegrityError("signature promised a lowering move that failed")
    cols[col_idx] = new_col
    out = _normalize(
        Wall(params, w.lam, tuple(cols), _bump_counts(w.counts, i, +1))
    )
    _post_check(out, was_reduced)
    return out


def e(params: AlgebraParams, i: int, w: Wall) -> Wall | None:
    col_idx = signature(w, i).e_column()
    if col_idx is None:
        return None
    if col_idx >= w.prefix_len:
        raise IntegrityError("raising move addressed a ground column")
    was_reduced = is_reduced(w) if OPERATOR_CHECKS else False
    cols = list(w.columns)
    new_col = slices.concrete_e(params, i, cols[col_idx])
    if new_col is None:
        raise IntegrityError("signature promised a raising move that failed")
    cols[col_idx] = new_col
    out = _normalize(
        Wall(params, w.lam, tuple(cols), _bump_counts(w.counts, i, -1))
    )
    _post_check(out, was_reduced)
    return out


def phi(params: AlgebraParams, i: int, w: Wall) -> int:
    return signature(w, i).zeros


def eps(params: AlgebraParams, i: int, w: Wall) -> int:
    return signature(w, i).ones


def cwt(params: AlgebraParams, w: Wall) -> Weight:
    return tuple(phi(params, i, w) - eps(params, i, w) for i in params.colors)


def wt(params: AlgebraParams, w: Wall) -> tuple[Weight, Weight]:
    """(highest weight, blocks added per color)."""
    return w.lam, w.counts


# --- the wall/path isomorphism ---------------------------------------------------


def to_path(params: AlgebraParams, w: Wall) -> paths.Path:
    prefix = tuple(
        slices.to_coords(params, _col_class(w.columns[k]))
        for k in range(w.prefix_len)
    )
    return paths._normalize(paths.Path(params, w.lam, prefix, w.counts))


def from_path(params: AlgebraParams, p: paths.Path) -> Wall:
    """Reduced proper wall mapping to the path: replay its lowering word."""
    word = paths.raise_to_ground(params, p)
    w = ground_wall(params, p.lam)
    for i in reversed(word):
        w = f(params, i, w)
        if w is None:
            raise IntegrityError("replaying the lowering word left the crystal")
    if to_path(params, w).prefix != paths._normalize(p).prefix:
        raise IntegrityError("wall does not map back to the given path")
    return w


# --- serialization and rendering ------------------------------------------------


def to_json(w: Wall) -> str:
    return json.dumps(
        {
            "lambda": list(w.lam),
            "columns": [
                [[layer.t, layer.state] for layer in col.layers]
                for col in w.columns
            ],
            "k": list(w.counts),
        }
    )


def from_json(text: str) -> Wall:
    data = json.loads(text)
    lam = tuple(data["lambda"])
    n = len(lam) - 1
    level = lam[0] + lam[1] + 2 * sum(lam[2 : n - 1]) + lam[n - 1] + lam[n]
    params = AlgebraParams(n, level)
    cols = []
    for k, layers in enumerate(data["columns"]):
        col = Slice(
            n,
            pattern_for_column(k),
            tuple(Layer(t, state) for t, state in layers),
        )
        slices.validate_slice(col)
        cols.append(col)
    counts = tuple(data.get("k", zero_weight(params)))
    return Wall(params, lam, tuple(cols), counts)


def render(w: Wall, extra_ground: int = 2) -> str:
    span = max(1, w.prefix_len + extra_ground)
    cols = [w.column(k) for k in range(span - 1, -1, -1)]
    rows = max(
        2 * layer.t + (2 if layer.state in (TL, TU) else 1)
        for col in cols
        for layer in col.layers
    )
    blocks = [render_slice(col, min_rows=rows).splitlines() for col in cols]
    lines = []
    for r in range(rows):
        lines.append(" ".join(block[r] for block in blocks))
    return "\n".join(lines)


def describe(w: Wall) -> str:
    cols = ";".join(
        ",".join(f"{layer.t}{layer.state}" for layer in col.layers)
        for col in w.columns
    )
    return f"[{cols or 'ground'}] k={list(w.counts)}"
