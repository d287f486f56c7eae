"""Crystal-graph generation by deterministic BFS, isomorphism check, exports.

A realization is any object with f(i, x), key(x), describe(x) and wt(x); the
generator never inspects states directly.  Node ids follow BFS discovery order
with colors expanded in ascending order, so exports are byte-stable.  The
frontier may be expanded by a thread pool; results are merged in frontier
order, which keeps parallel output identical to serial output.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import DomainError, ResourceError


@dataclass(frozen=True)
class Node:
    id: int
    label: str
    cwt: tuple[int, ...]
    counts: tuple[int, ...] | None
    depth: int


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    color: int


@dataclass
class CrystalGraph:
    colors: tuple[int, ...]
    nodes: list[Node] = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)
    root: int = 0
    meta: dict = field(default_factory=dict)

    def out_edges(self, node_id: int) -> list[Edge]:
        return [e for e in self.edges if e.src == node_id]

    def validate(self) -> None:
        seen_out: set[tuple[int, int]] = set()
        seen_in: set[tuple[int, int]] = set()
        for edge in self.edges:
            if (edge.src, edge.color) in seen_out:
                raise DomainError(f"two {edge.color}-edges out of node {edge.src}")
            if (edge.dst, edge.color) in seen_in:
                raise DomainError(f"two {edge.color}-edges into node {edge.dst}")
            seen_out.add((edge.src, edge.color))
            seen_in.add((edge.dst, edge.color))
        reachable = {self.root}
        frontier = [self.root]
        adjacency: dict[int, list[int]] = {}
        for edge in self.edges:
            adjacency.setdefault(edge.src, []).append(edge.dst)
        while frontier:
            nxt = []
            for v in frontier:
                for u in adjacency.get(v, ()):
                    if u not in reachable:
                        reachable.add(u)
                        nxt.append(u)
            frontier = nxt
        if len(reachable) != len(self.nodes):
            raise DomainError("graph has nodes unreachable from the root")


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("THREADS", "1")))
    except ValueError:
        return 1


def generate(
    realization,
    root,
    max_depth: int | None,
    node_budget: int = 200_000,
    parallel: bool | None = None,
) -> CrystalGraph:
    """BFS over the lowering operators up to max_depth (None = exhaust)."""
    if parallel is None:
        parallel = thread_count() > 1
    colors = tuple(realization.colors)
    graph = CrystalGraph(colors=colors, meta=dict(realization.meta))
    ids: dict = {realization.key(root): 0}
    states = [root]
    graph.nodes.append(
        Node(0, realization.describe(root), *realization.wt(root), depth=0)
    )
    frontier = [0]
    depth = 0
    pool = (
        ThreadPoolExecutor(max_workers=max(2, thread_count())) if parallel else None
    )
    try:
        while frontier and (max_depth is None or depth < max_depth):
            depth += 1

            def expand(node_id):
                state = states[node_id]
                return [(i, realization.f(i, state)) for i in colors]

            if pool is not None:
                expansions = list(pool.map(expand, frontier))
            else:
                expansions = [expand(v) for v in frontier]
            next_frontier = []
            for node_id, children in zip(frontier, expansions):
                for color, child in children:
                    if child is None:
                        continue
                    key = realization.key(child)
                    if key not in ids:
                        ids[key] = len(states)
                        states.append(child)
                        graph.nodes.append(
                            Node(
                                ids[key],
                                realization.describe(child),
                                *realization.wt(child),
                                depth=depth,
                            )
                        )
                        next_frontier.append(ids[key])
                        if len(states) > node_budget:
                            raise ResourceError(
                                f"node budget {node_budget} exceeded at depth {depth}"
                            )
                    graph.edges.append(Edge(node_id, ids[key], color))
            frontier = next_frontier
    finally:
        if pool is not None:
            pool.shutdown()
    return graph


def colored_isomorphic(g1: CrystalGraph, g2: CrystalGraph) -> bool:
    """Root-fixing color-respecting isomorphism; forced map, O(V+E)."""
    if len(g1.nodes) != len(g2.nodes) or len(g1.edges) != len(g2.edges):
        return False
    succ1: dict[tuple[int, int], int] = {(e.src, e.color): e.dst for e in g1.edges}
    succ2: dict[tuple[int, int], int] = {(e.src, e.color): e.dst for e in g2.edges}
    if len(succ1) != len(g1.edges) or len(succ2) != len(g2.edges):
        return False
    mapping = {g1.root: g2.root}
    stack = [g1.root]
    colors = set(c for _, c in succ1) | set(c for _, c in succ2)
    while stack:
        v = stack.pop()
        for c in colors:
            t1 = succ1.get((v, c))
            t2 = succ2.get((mapping[v], c))
            if (t1 is None) != (t2 is None):
                return False
            if t1 is None:
                continue
            if t1 in mapping:
                if mapping[t1] != t2:
                    return False
            else:
                if t2 in set(mapping.values()):
                    return False
                mapping[t1] = t2
                stack.append(t1)
    return len(mapping) == len(g1.nodes)


def weight_multiplicities(g: CrystalGraph) -> dict:
    out: dict = {}
    for node in g.nodes:
        key = (node.cwt, node.counts)
        out[key] = out.get(key, 0) + 1
    return out


def multiplicities_by_depth(g: CrystalGraph) -> dict:
    out: dict = {}
    for node in g.nodes:
        key = (node.depth, node.cwt, node.counts)
        out[key] = out.get(key, 0) + 1
    return out


def export_dot(g: CrystalGraph) -> str:
    lines = ["digraph crystal {", "rankdir=TB;"]
    for node in g.nodes:
        label = node.label.replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'{node.id} [label="{label}"];')
    for edge in g.edges:
        lines.append(f'{edge.src} -> {edge.dst} [label="{edge.color}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(g: CrystalGraph) -> str:
    payload = {
        "algebra": {
            "n": g.meta.get("n"),
            "level": g.meta.get("level"),
        },
        "lambda": g.meta.get("lambda"),
        "nodes": [
            {
                "id": node.id,
                "depth": node.depth,
                "label": node.label,
                "cwt": list(node.cwt),
                "k": None if node.counts is None else list(node.counts),
            }
            for node in g.nodes
        ],
        "edges": [
            {"from": edge.src, "to": edge.dst, "color": edge.color}
            for edge in g.edges
        ],
        "root": g.root,
    }
    return json.dumps(payload, indent=None, separators=(",", ":")) + "\n"


def graph_from_json(text: str) -> CrystalGraph:
    data = json.loads(text)
    graph = CrystalGraph(colors=())
    graph.meta = {
        "n": data["algebra"]["n"],
        "level": data["algebra"]["level"],
        "lambda": data["lambda"],
    }
    for node in data["nodes"]:
        graph.nodes.append(
            Node(
                node["id"],
                node["label"],
                tuple(node["cwt"]),
                None if node["k"] is None else tuple(node["k"]),
                node["depth"],
            )
        )
    for edge in data["edges"]:
        graph.edges.append(Edge(edge["from"], edge["to"], edge["color"]))
    graph.root = data["root"]
    return graph


# --- realization adapters -------------------------------------------------------


class CoordRealization:
    def __init__(self, params):
        from . import coords

        self._coords = coords
        self.params = params
        self.colors = tuple(params.colors)
        self.meta = {"n": params.n, "level": params.level, "lambda": None}

    def f(self, i, b):
        return self._coords.f(self.params, i, b)

    def e(self, i, b):
        return self._coords.e(self.params, i, b)

    def key(self, b):
        return b

    def describe(self, b):
        return b.render()

    def wt(self, b):
        return self._coords.cwt(self.params, b), None


class SliceRealization:
    def __init__(self, params):
        from . import slices

        self._slices = slices
        self.params = params
        self.colors = tuple(params.colors)
        self.meta = {"n": params.n, "level": params.level, "lambda": None}

    def f(self, i, c):
        return self._slices.f(self.params, i, c)

    def e(self, i, c):
        return self._slices.e(self.params, i, c)

    def key(self, c):
        return c

    def describe(self, c):
        return self._slices.describe(c)

    def wt(self, c):
        return self._slices.cwt(self.params, c), None


class WallRealization:
    def __init__(self, params, lam):
        from . import walls

        self._walls = walls
        self.params = params
        self.lam = lam
        self.colors = tuple(params.colors)
        self.meta = {"n": params.n, "level": params.level, "lambda": list(lam)}

    def f(self, i, w):
        return self._walls.f(self.params, i, w)

    def e(self, i, w):
        return self._walls.e(self.params, i, w)

    def key(self, w):
        return w

    def describe(self, w):
        return self._walls.describe(w)

    def wt(self, w):
        return self._walls.cwt(self.params, w), w.counts


class PathRealization:
    def __init__(self, params, lam):
        from . import paths

        self._paths = paths
        self.params = params
        self.lam = lam
        self.colors = tuple(params.colors)
        self.meta = {"n": params.n, "level": params.level, "lambda": list(lam)}

    def f(self, i, p):
        return self._paths.f(self.params, i, p)

    def e(self, i, p):
        return self._paths.e(self.params, i, p)

    def key(self, p):
        return p

    def describe(self, p):
        return self._paths.describe(p)

    def wt(self, p):
        return self._paths.cwt(self.params, p), p.counts
