"""Command-line interface.

Exit codes: 0 success, 1 verification/integrity failure, 2 usage error.
Parallel frontier expansion is controlled by the THREADS environment variable.
"""
from __future__ import annotations

import argparse
import sys

from .algebra import AlgebraParams, dominant_weights_of_level, is_dominant, level_of
from . import coords, graphgen, paths, slices, walls
from .errors import DomainError, IntegrityError


def _parse_lambda(text: str, n: int) -> tuple[int, ...]:
    try:
        lam = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise DomainError(f"bad weight list {text!r}") from exc
    if len(lam) != n + 1:
        raise DomainError(f"weight needs {n + 1} entries, got {len(lam)}")
    if not is_dominant(lam):
        raise DomainError("weight must be dominant")
    return lam


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _export(graph, fmt: str) -> str:
    return graphgen.export_dot(graph) if fmt == "dot" else graphgen.export_json(graph)


def cmd_perfect(args) -> int:
    params = AlgebraParams(args.n, args.level)
    elements = coords.enumerate_crystal(params)
    if args.realization == "coords":
        realization = graphgen.CoordRealization(params)
        root = elements[0]
    else:
        realization = graphgen.SliceRealization(params)
        root = slices.to_slice(params, elements[0])
    graph = graphgen.generate(realization, root, max_depth=None)
    if len(graph.nodes) != len(elements):
        print(
            f"error: reached {len(graph.nodes)} of {len(elements)} elements",
            file=sys.stderr,
        )
        return 1
    if args.check_iso:
        failures = 0
        for b in elements:
            c = slices.to_slice(params, b)
            for i in params.colors:
                for coord_op, slice_op in (
                    (coords.f, slices.f),
                    (coords.e, slices.e),
                ):
                    via_coords = coord_op(params, i, b)
                    expected = (
                        None
                        if via_coords is None
                        else slices.to_slice(params, via_coords)
                    )
                    if slice_op(params, i, c) != expected:
                        failures += 1
                        print(
                            f"mismatch at {b.render()} color {i}", file=sys.stderr
                        )
        print(
            f"checked {len(elements)} elements x {params.n + 1} colors", file=sys.stderr
        )
        if failures:
            return 1
    _emit(_export(graph, args.format), args.out)
    return 0


def cmd_highest(args) -> int:
    lam = _parse_lambda(args.lam, args.n)
    params = AlgebraParams(args.n, level_of(AlgebraParams(args.n, 1), lam))
    if args.realization == "walls" or args.compare:
        wall_real = graphgen.WallRealization(params, lam)
        wall_graph = graphgen.generate(
            wall_real, walls.ground_wall(params, lam), args.depth
        )
    if args.realization == "paths" or args.compare:
        path_real = graphgen.PathRealization(params, lam)
        path_graph = graphgen.generate(
            path_real, paths.ground_path(params, lam), args.depth
        )
    if args.compare:
        if not graphgen.colored_isomorphic(wall_graph, path_graph):
            print("error: wall and path graphs are not isomorphic", file=sys.stderr)
            return 1
        if graphgen.multiplicities_by_depth(wall_graph) != graphgen.multiplicities_by_depth(
            path_graph
        ):
            print("error: weight multiplicity tables differ", file=sys.stderr)
            return 1
    graph = wall_graph if args.realization == "walls" else path_graph
    _emit(_export(graph, args.format), args.out)
    return 0


def _suite_psi(params) -> tuple[int, list[str]]:
    checked = 0
    problems: list[str] = []
    for b in coords.enumerate_crystal(params):
        c = slices.to_slice(params, b)
        if slices.to_coords(params, c) != b:
            problems.append(f"roundtrip failed at {b.render()}")
        for i in params.colors:
            for coord_op, slice_op, transport in (
                (coords.f, slices.f, slices.f_transport),
                (coords.e, slices.e, slices.e_transport),
            ):
                via = coord_op(params, i, b)
                expected = None if via is None else slices.to_slice(params, via)
                got = slice_op(params, i, c)
                if got != expected:
                    problems.append(f"operator mismatch {b.render()} color {i}")
                if got != transport(params, i, c):
                    problems.append(f"transport mismatch {b.render()} color {i}")
                checked += 1
            if coords.phi(params, i, b) != slices.phi(params, i, c) or coords.eps(
                params, i, b
            ) != slices.eps(params, i, c):
                problems.append(f"string statistics differ {b.render()} color {i}")
    return checked, problems


def _suite_ground(params, lams) -> tuple[int, list[str]]:
    checked = 0
    problems: list[str] = []
    for lam in lams:
        w = walls.ground_wall(params, lam)
        if not walls.is_valid(w):
            problems.append(f"{lam}: ground wall invalid")
        if not walls.is_proper(w):
            problems.append(f"{lam}: ground wall improper")
        if not walls.is_reduced(w):
            problems.append(f"{lam}: ground wall not reduced")
        for i in params.colors:
            if walls.eps(params, i, w) != 0:
                problems.append(f"{lam}: eps_{i} nonzero at ground")
            if walls.phi(params, i, w) != lam[i]:
                problems.append(f"{lam}: phi_{i} != a_{i} at ground")
        for k in range(8):
            here = paths.ground_element(params, lam, k)
            nxt = paths.ground_element(params, lam, k + 1)
            if coords.phi_vector(params, nxt) != coords.eps_vector(params, here):
                problems.append(f"{lam}: ground recurrence broken at {k}")
        checked += 1
    return checked, problems


def _suite_axioms(params, lam, depth) -> tuple[int, list[str]]:
    from .algebra import classical_alpha, weight_sub

    checked = 0
    problems: list[str] = []
    real = graphgen.WallRealization(params, lam)
    states = {real.key(walls.ground_wall(params, lam)): walls.ground_wall(params, lam)}
    frontier = list(states.values())
    for _ in range(depth):
        nxt = []
        for w in frontier:
            for i in params.colors:
                child = walls.f(params, i, w)
                if child is None:
                    continue
                if walls.e(params, i, child) != w:
                    problems.append(f"e_{i} f_{i} != id on {walls.describe(w)}")
                expected = weight_sub(
                    walls.cwt(params, w), classical_alpha(params, i)
                )
                if walls.cwt(params, child) != expected:
                    problems.append(f"weight law broken on color {i}")
                checked += 1
                if real.key(child) not in states:
                    states[real.key(child)] = child
                    nxt.append(child)
        frontier = nxt
    return checked, problems


def _suite_signature(params, lam) -> tuple[int, list[str]]:
    # the tail-stability assertion inside tail_signature does the real work
    problems: list[str] = []
    checked = 0
    p = paths.ground_path(params, lam)
    w = walls.ground_wall(params, lam)
    for i in params.colors:
        paths.signature(p, i)
        walls.signature(w, i)
        checked += 2
    cur = w
    for _ in range(4):
        for i in params.colors:
            nxt = walls.f(params, i, cur)
            if nxt is not None:
                cur = nxt
                break
        for i in params.colors:
            walls.signature(cur, i)
            checked += 1
    return checked, problems


def cmd_verify(args) -> int:
    params = AlgebraParams(args.n, args.level)
    lams = dominant_weights_of_level(params, args.level)
    total_problems: list[str] = []
    suites = (
        ["psi", "signature", "ground", "axioms"]
        if args.suite == "all"
        else [args.suite]
    )
    for suite in suites:
        if suite == "psi":
            checked, problems = _suite_psi(params)
        elif suite == "ground":
            checked, problems = _suite_ground(params, lams)
        elif suite == "signature":
            checked, problems = _suite_signature(params, lams[0])
        else:
            checked, problems = _suite_axioms(params, lams[0], depth=3)
        print(f"suite {suite}: {checked} checks, {len(problems)} failures")
        total_problems.extend(problems)
    for problem in total_problems[:10]:
        print(f"  {problem}", file=sys.stderr)
    return 1 if total_problems else 0


def cmd_render(args) -> int:
    if args.wall:
        try:
            with open(args.wall) as handle:
                text = handle.read()
            if not text.strip():
                raise DomainError("empty wall file")
            w = walls.from_json(text)
        except (OSError, ValueError, KeyError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    else:
        if args.lam is None or args.n is None:
            print("error: need either --wall or --n and --lambda", file=sys.stderr)
            return 2
        lam = _parse_lambda(args.lam, args.n)
        params = AlgebraParams(args.n, level_of(AlgebraParams(args.n, 1), lam))
        w = walls.ground_wall(params, lam)
    _emit(walls.render(w) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dnwalls",
        description="Affine type-D crystal engine: perfect crystals, slices, "
        "Young walls, and crystal graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("perfect", help="emit a full perfect-crystal graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--realization", choices=("coords", "slices"), default="coords")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--check-iso", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_perfect)

    p = sub.add_parser("highest", help="BFS a highest-weight crystal graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True, help="a_0,...,a_n")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--realization", choices=("walls", "paths"), default="walls")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--compare", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_highest)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("--suite", choices=("psi", "signature", "ground", "axioms", "all"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="print the ASCII side view of a wall")
    p.add_argument("--wall", help="wall JSON file")
    p.add_argument("--n", type=int)
    p.add_argument("--lambda", dest="lam", help="a_0,...,a_n")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
