import pytest

from dnwalls import coords, graphgen, paths, slices, walls
from dnwalls.algebra import AlgebraParams
from dnwalls.errors import ResourceError

P41 = AlgebraParams(4, 1)
P42 = AlgebraParams(4, 2)
LAM = (1, 0, 0, 0, 1)


def wall_graph(params, lam, depth, parallel=False):
    return graphgen.generate(
        graphgen.WallRealization(params, lam),
        walls.ground_wall(params, lam),
        depth,
        parallel=parallel,
    )


def path_graph(params, lam, depth):
    return graphgen.generate(
        graphgen.PathRealization(params, lam), paths.ground_path(params, lam), depth
    )


def test_depth_zero_single_node():
    g = wall_graph(P42, LAM, 0)
    assert len(g.nodes) == 1 and not g.edges
    g.validate()


def test_highest_weight_root_has_no_in_edges():
    for g in (wall_graph(P42, LAM, 4), path_graph(P42, LAM, 4)):
        assert all(e.dst != g.root for e in g.edges)


def test_depth_one_matches_figure():
    g = wall_graph(P42, LAM, 1)
    assert len(g.nodes) == 3
    assert sorted(e.color for e in g.edges) == [0, 4]
    g.validate()


def test_depth_two_counts_and_convergence():
    g = wall_graph(P42, LAM, 2)
    # row sizes 1 + 2 + 3; the two depth-2 paths 0,4 and 4,0 converge
    assert len(g.nodes) == 6
    assert len(g.edges) == 6
    by_src = {}
    for e in g.edges:
        by_src.setdefault(e.src, []).append(e)
    zero_child = next(e.dst for e in by_src[0] if e.color == 0)
    four_child = next(e.dst for e in by_src[0] if e.color == 4)
    assert sorted(e.color for e in by_src[zero_child]) == [2, 4]
    assert sorted(e.color for e in by_src[four_child]) == [0, 2]
    t04 = next(e.dst for e in by_src[zero_child] if e.color == 4)
    t40 = next(e.dst for e in by_src[four_child] if e.color == 0)
    assert t04 == t40
    g.validate()


def test_node_budget():
    with pytest.raises(ResourceError):
        graphgen.generate(
            graphgen.WallRealization(P42, LAM),
            walls.ground_wall(P42, LAM),
            6,
            node_budget=5,
        )


def test_graph_is_isomorphic_to_itself():
    g = wall_graph(P42, LAM, 3)
    assert graphgen.colored_isomorphic(g, g)


def test_wall_and_path_graphs_isomorphic():
    for depth in (3, 5):
        wg = wall_graph(P42, LAM, depth)
        pg = path_graph(P42, LAM, depth)
        assert graphgen.colored_isomorphic(wg, pg)
        assert graphgen.weight_multiplicities(wg) == graphgen.weight_multiplicities(pg)
        assert graphgen.multiplicities_by_depth(wg) == graphgen.multiplicities_by_depth(pg)


def test_relabelled_crystals_are_not_identity_isomorphic():
    g0 = wall_graph(P41, (1, 0, 0, 0, 0), 3)
    g1 = wall_graph(P41, (0, 1, 0, 0, 0), 3)
    assert not graphgen.colored_isomorphic(g0, g1)


def test_multiplicity_table_sums_to_node_count():
    g = wall_graph(P42, LAM, 4)
    table = graphgen.weight_multiplicities(g)
    assert sum(table.values()) == len(g.nodes)
    root_key = (g.nodes[0].cwt, g.nodes[0].counts)
    assert table[root_key] == 1


def test_depth_monotone_prefix():
    g4 = wall_graph(P42, LAM, 4)
    g5 = wall_graph(P42, LAM, 5)
    labels4 = {n.label for n in g4.nodes}
    labels5 = {n.label for n in g5.nodes}
    assert labels4 <= labels5
    edges4 = {(g4.nodes[e.src].label, g4.nodes[e.dst].label, e.color) for e in g4.edges}
    edges5 = {(g5.nodes[e.src].label, g5.nodes[e.dst].label, e.color) for e in g5.edges}
    assert edges4 <= edges5


def test_perfect_crystal_graphs_cover_all_elements():
    for params in (P41, P42):
        elements = coords.enumerate_crystal(params)
        g = graphgen.generate(graphgen.CoordRealization(params), elements[0], None)
        assert len(g.nodes) == len(elements)
        start = slices.to_slice(params, elements[0])
        g2 = graphgen.generate(graphgen.SliceRealization(params), start, None)
        assert len(g2.nodes) == len(elements)
        assert graphgen.colored_isomorphic(g, g2)


def test_dot_export_shape():
    g = wall_graph(P42, LAM, 2)
    dot = graphgen.export_dot(g)
    assert dot.startswith("digraph crystal {\nrankdir=TB;")
    assert dot.count(" -> ") == 6
    assert '[label="0"]' in dot


def test_json_export_roundtrip_bytes():
    g = wall_graph(P42, LAM, 3)
    text = graphgen.export_json(g)
    again = graphgen.export_json(graphgen.graph_from_json(text))
    assert text == again


def test_parallel_matches_serial():
    serial = graphgen.export_json(wall_graph(P42, LAM, 4, parallel=False))
    parallel = graphgen.export_json(wall_graph(P42, LAM, 4, parallel=True))
    assert serial == parallel
