"""Path realization of the highest-weight crystal: the oracle the walls are
checked against.

A path stores the finitely many components that differ from the ground path;
component k for k beyond the prefix is the k-th ground element.  Block counts
per color are tracked alongside, so the affine weight is available for any
path reached from the ground path by recorded operator applications.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .algebra import AlgebraParams, Weight, is_dominant, level_of, weight_sub, zero_weight
from . import coords
from .coords import CoordElement
from .errors import DomainError, UnsupportedInputError
from .signatures import Signature, tail_signature

_ground_cache: dict[tuple[AlgebraParams, Weight], list[CoordElement]] = {}


def _check_highest_weight(params: AlgebraParams, lam: Weight) -> None:
    if not is_dominant(lam):
        raise DomainError(f"highest weight must be dominant, got {lam}")
    if level_of(params, lam) != params.level:
        raise DomainError(
            f"weight {lam} has level {level_of(params, lam)}, expected {params.level}"
        )


def ground_element(params: AlgebraParams, lam: Weight, k: int) -> CoordElement:
    """k-th component of the ground path: phi-vector chains down from lam."""
    _check_highest_weight(params, lam)
    key = (params, lam)
    seq = _ground_cache.setdefault(key, [])
    while len(seq) <= k:
        target = (
            lam if not seq else coords.eps_vector(params, seq[-1])
        )
        seq.append(coords.element_with_phi_vector(params, target))
    return seq[k]


@dataclass(frozen=True)
class Path:
    params: AlgebraParams
    lam: Weight
    prefix: tuple[CoordElement, ...]
    counts: tuple[int, ...] | None = None  # blocks added per color, if tracked

    def component(self, k: int) -> CoordElement:
        if k < len(self.prefix):
            return self.prefix[k]
        return ground_element(self.params, self.lam, k)

    def render(self) -> str:
        parts = [self.component(k).render() for k in range(len(self.prefix))]
        parts.append("...")
        return " <- ".join(reversed(parts)) if parts else "ground"


def ground_path(params: AlgebraParams, lam: Weight) -> Path:
    _check_highest_weight(params, lam)
    return Path(params, lam, (), zero_weight(params))


def _normalize(p: Path) -> Path:
    prefix = list(p.prefix)
    while prefix and prefix[-1] == ground_element(p.params, p.lam, len(prefix) - 1):
        prefix.pop()
    return replace(p, prefix=tuple(prefix))


def signature(p: Path, i: int) -> Signature:
    params = p.params
    k_start = len(p.prefix)

    def ground_eps_phi(k: int) -> tuple[int, int]:
        g = ground_element(params, p.lam, k)
        return coords.eps(params, i, g), coords.phi(params, i, g)

    explicit = [
        (
            j,
            coords.eps(params, i, p.prefix[j]),
            coords.phi(params, i, p.prefix[j]),
        )
        for j in range(k_start - 1, -1, -1)
    ]
    return tail_signature(ground_eps_phi, k_start, explicit)


def _bump_counts(p: Path, i: int, d: int) -> tuple[int, ...] | None:
    if p.counts is None:
        return None
    c = list(p.counts)
    c[i] += d
    return tuple(c)


def f(params: AlgebraParams, i: int, p: Path) -> Path | None:
    col = signature(p, i).f_column()
    if col is None:
        return None
    prefix = list(p.prefix)
    while len(prefix) <= col:
        prefix.append(ground_element(params, p.lam, len(prefix)))
    prefix[col] = coords.f(params, i, prefix[col])
    return _normalize(
        replace(p, prefix=tuple(prefix), counts=_bump_counts(p, i, +1))
    )


def e(params: AlgebraParams, i: int, p: Path) -> Path | None:
    col = signature(p, i).e_column()
    if col is None:
        return None
    prefix = list(p.prefix)
    prefix[col] = coords.e(params, i, prefix[col])
    return _normalize(
        replace(p, prefix=tuple(prefix), counts=_bump_counts(p, i, -1))
    )


def phi(params: AlgebraParams, i: int, p: Path) -> int:
    return signature(p, i).zeros


def eps(params: AlgebraParams, i: int, p: Path) -> int:
    return signature(p, i).ones


def cwt(params: AlgebraParams, p: Path) -> Weight:
    return tuple(phi(params, i, p) - eps(params, i, p) for i in params.colors)


def wt(params: AlgebraParams, p: Path) -> tuple[Weight, Weight]:
    """(highest weight, blocks added per color)."""
    if p.counts is None:
        raise UnsupportedInputError(
            "path was not built from the ground path; block counts unknown"
        )
    return p.lam, p.counts


def raise_to_ground(params: AlgebraParams, p: Path) -> list[int]:
    """Colors of a raising word taking p to the ground path, in applied order."""
    word: list[int] = []
    guard = 10_000
    cur = p
    while cur.prefix:
        for i in params.colors:
            nxt = e(params, i, cur)
            if nxt is not None:
                word.append(i)
                cur = nxt
                break
        else:
            raise DomainError("path has no raising move but is not ground")
        if len(word) > guard:
            raise DomainError("raising did not terminate; not a valid path")
    return word


def to_json(p: Path) -> str:
    comps = [list(c.x) + list(reversed(c.xbar)) for c in p.prefix]
    return json.dumps({"lambda": list(p.lam), "components": comps})


def from_json(params: AlgebraParams, text: str) -> Path:
    data = json.loads(text)
    lam = tuple(data["lambda"])
    n = params.n
    prefix = []
    for flat in data["components"]:
        if len(flat) != 2 * n:
            raise DomainError("component length does not match the rank")
        x = tuple(flat[:n])
        xbar = tuple(reversed(flat[n:]))
        b = CoordElement(x, xbar)
        coords.validate(params, b)
        prefix.append(b)
    return _normalize(Path(params, lam, tuple(prefix)))


def describe(p: Path) -> str:
    return p.render()
