import networkx as nx
import pytest
from hypothesis import given, settings

from graphs import complete, cycle, from_pairs, path, small_graphs
from ollivier_exact.counterexamples import build_ce_bipartite, build_ce_girth5
from ollivier_exact.graph import (
    Graph,
    GraphError,
    bfs_distances,
    build_graph,
    connected_components,
    distance_capped,
    format_edge_list,
    girth_at_least,
    induced_subgraph,
    is_bipartite,
    parse_edge_list,
)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(len(g)))
    h.add_edges_from(g.edges())
    return h


def test_build_path_of_three():
    g = build_graph([("a", "b"), ("b", "c")])
    assert g.vertex_count == 3 and g.edge_count == 2
    assert g.labels == ("a", "b", "c")


def test_build_dedups_and_symmetrises():
    g = build_graph([("a", "b"), ("b", "a"), ("a", "b")])
    assert g.edge_count == 1
    assert g.has_edge(0, 1) and g.has_edge(1, 0)


def test_build_rejects_self_loop():
    with pytest.raises(GraphError, match="self-loop"):
        build_graph([("a", "a")])


def test_parse_reports_offending_line():
    with pytest.raises(GraphError, match="line 3"):
        parse_edge_list("# header\na b\nc c\n")


def test_parse_skips_comments_and_blanks():
    g = parse_edge_list("\n# x y\na b\n\n  b c  \n")
    assert g.edge_count == 2


def test_parse_rejects_wrong_token_count():
    with pytest.raises(GraphError, match="line 1"):
        parse_edge_list("a b c\n")


def test_empty_input_is_empty_graph():
    g = parse_edge_list("")
    assert g.vertex_count == 0 and g.edge_count == 0
    assert connected_components(g) == []


def test_edge_list_round_trip():
    g = from_pairs("ab bc ca cd")
    assert parse_edge_list(format_edge_list(g)) == g


def test_constructor_enforces_invariants():
    with pytest.raises(GraphError):
        Graph(((0,),), ("a",))
    with pytest.raises(GraphError):
        Graph(((1,), ()), ("a", "b"))


def test_distance_capped_examples():
    c5 = cycle(5)
    assert distance_capped(c5, 0, 2, 4) == 2
    p4 = path(4)
    assert distance_capped(p4, 0, 3, 2) is None
    assert distance_capped(p4, 0, 3, 3) == 3
    assert distance_capped(p4, 1, 1, 0) == 0
    with pytest.raises(ValueError):
        distance_capped(p4, 0, 1, -1)


def test_distance_capped_disconnected():
    g = from_pairs("ab cd")
    assert distance_capped(g, 0, 2, 10) is None


def test_distance_in_girth5_counterexample():
    inst = build_ce_girth5(6)
    g = inst.graph
    assert distance_capped(g, g.index("pu2"), g.index("q3"), 4) == 1
    q3 = g.index("q3")
    for i in range(1, 7):
        assert distance_capped(g, q3, g.index(f"P{i}"), 4) == 3
        assert distance_capped(g, g.index("pu2"), g.index(f"Q{i}"), 4) == 3


def test_girth_examples():
    assert girth_at_least(cycle(5), 5)
    assert not girth_at_least(cycle(5), 6)
    assert not girth_at_least(complete(3), 4)
    assert girth_at_least(path(6), 100)
    assert girth_at_least(build_ce_girth5(6).graph, 5)
    with pytest.raises(ValueError):
        girth_at_least(cycle(4), 2)


def test_bipartite_examples():
    assert is_bipartite(cycle(4))
    assert not is_bipartite(complete(3))
    assert is_bipartite(build_ce_bipartite(5).graph)


def test_induced_subgraph_examples():
    k3 = complete(3)
    sub, old, new_of = induced_subgraph(k3, [0, 2])
    assert sub.edge_count == 1 and old == [0, 2] and new_of == {0: 0, 2: 1}
    empty, old, _ = induced_subgraph(k3, [])
    assert empty.vertex_count == 0 and old == []


def test_induced_subgraph_of_bipartite_counterexample_R_is_connected():
    g = build_ce_bipartite(5).graph
    R = [g.index(x) for x in ["v1", "v2", "u1"] + [f"U{i}" for i in range(1, 6)]]
    sub, _, _ = induced_subgraph(g, R)
    assert len(connected_components(sub)) == 1


def test_connected_components_examples():
    assert connected_components(from_pairs("ab cd")) == [[0, 1], [2, 3]]
    assert len(connected_components(cycle(6))) == 1


@settings(max_examples=150, deadline=None)
@given(small_graphs())
def test_predicates_match_networkx(g):
    h = to_nx(g)
    assert is_bipartite(g) == nx.is_bipartite(h)
    girth = nx.girth(h)
    for t in (3, 4, 5, 6, 7):
        assert girth_at_least(g, t) == (girth >= t)
    assert sorted(map(sorted, connected_components(g))) == sorted(sorted(c) for c in nx.connected_components(h))
    lengths = dict(nx.all_pairs_shortest_path_length(h))
    for a in range(len(g)):
        assert bfs_distances(g, a) == lengths[a]


@settings(max_examples=100, deadline=None)
@given(small_graphs())
def test_distance_symmetry_and_triangle_inequality(g):
    cap = 4
    n = len(g)
    d = [[distance_capped(g, a, b, cap) for b in range(n)] for a in range(n)]
    for a in range(n):
        for b in range(n):
            assert d[a][b] == d[b][a]
            for c in range(n):
                if None not in (d[a][b], d[b][c], d[a][c]):
                    assert d[a][c] <= d[a][b] + d[b][c]


@settings(max_examples=100, deadline=None)
@given(small_graphs())
def test_induced_subgraph_preserves_adjacency(g):
    S = list(range(0, len(g), 2))
    sub, old, new_of = induced_subgraph(g, S)
    for x in S:
        for y in S:
            assert sub.has_edge(new_of[x], new_of[y]) == g.has_edge(x, y)
    assert girth_at_least(sub, 3)
