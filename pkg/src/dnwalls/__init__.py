"""Combinatorial engine for affine type-D crystals.

Four realizations of the same objects, cross-checked against each other:

* :mod:`dnwalls.coords`  -- the level-l perfect crystal in coordinate form
* :mod:`dnwalls.slices`  -- the same crystal as classes of block slices
* :mod:`dnwalls.paths`   -- highest-weight crystals as eventually-ground paths
* :mod:`dnwalls.walls`   -- highest-weight crystals as reduced proper Young walls

:mod:`dnwalls.graphgen` turns any of them into colored crystal graphs.
"""

from .algebra import AlgebraParams
from .coords import CoordElement
from .geometry import Layer, Slice
from .slices import SliceClass
from .paths import Path
from .walls import Wall

__all__ = [
    "AlgebraParams",
    "CoordElement",
    "Layer",
    "Slice",
    "SliceClass",
    "Path",
    "Wall",
]
