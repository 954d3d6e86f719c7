import dataclasses

import pytest
from hypothesis import given, settings

from graphs import complete, cycle, from_pairs, small_graphs
from ollivier_exact.corpus import connected_graphs_upto
from ollivier_exact.counterexamples import build_ce_bipartite, build_ce_girth5
from ollivier_exact.graph import NotAnEdgeError, bfs_distances, induced_subgraph
from ollivier_exact.partition import (
    CLASS_NAMES,
    R_CLASSES,
    classify_core,
    components_of_R,
    refine_counts,
    verify_class_separations,
)


def names(g, vertices):
    return {g.label(a) for a in vertices}


def test_k3():
    g = complete(3)
    part = classify_core(g, 0, 1)
    assert part.triangle == {2}
    assert all(not getattr(part, n) for n in CLASS_NAMES if n != "triangle")


def test_not_an_edge():
    g = from_pairs("ab bc")
    with pytest.raises(NotAnEdgeError, match="not an edge"):
        classify_core(g, 0, 2)


def test_bipartite_counterexample_classes():
    inst = build_ce_bipartite(5)
    g = inst.graph
    part = classify_core(g, *inst.edge)
    assert names(g, part.square_u) == {"v1", "v2"}
    assert names(g, part.square_v) == {"u1", "U1", "U2", "U3", "U4", "U5"}
    assert not part.triangle
    comps = components_of_R(g, part)
    assert len(comps) == 1
    assert set(comps[0].vertices) == part.square_u | part.square_v


def test_girth5_counterexample_counts():
    inst = build_ce_girth5(6)
    part = classify_core(inst.graph, *inst.edge)
    c = part.counts()
    assert (c["pentagon_u"], c["pentagon_v"]) == (2, 7)
    assert c["triangle"] == c["square_u"] == c["square_v"] == 0


def test_components_examples():
    # triangle u v t with pendant vertices keeping everything else empty
    g = from_pairs("uv ut vt ux")
    part = classify_core(g, g.index("u"), g.index("v"))
    comps = components_of_R(g, part)
    assert len(comps) == 1 and comps[0].counts()["triangle"] == 1
    assert components_of_R(cycle(6), classify_core(cycle(6), 0, 1)) == []


def test_components_are_ordered_by_smallest_vertex():
    g = from_pairs("uv ua vb ab uc vd cd")
    comps = components_of_R(g, classify_core(g, 0, 1))
    mins = [min(c.vertices) for c in comps]
    assert mins == sorted(mins) and len(comps) == 2


def test_refined_counts_examples():
    c4 = cycle(4)
    part = classify_core(c4, 0, 1)
    r = refine_counts(part, components_of_R(c4, part), c4)
    assert (r.sq_circ_u, r.sq_circ_v, r.sq_tri_u, r.sq_tri_v) == (1, 1, 0, 0)

    c5 = cycle(5)
    part = classify_core(c5, 0, 1)
    r = refine_counts(part, components_of_R(c5, part), c5)
    assert (r.pent_circ_u, r.pent_circ_v) == (1, 1)

    # s neighbours u and the triangle vertex t, so it is a square of u next to a triangle
    g = from_pairs("uv ut vt us st")
    part = classify_core(g, g.index("u"), g.index("v"))
    assert names(g, part.square_u) == {"s"}
    r = refine_counts(part, components_of_R(g, part), g)
    assert (r.sq_tri_u, r.sq_circ_u) == (1, 0)


def test_refine_rejects_unknown_reading():
    c5 = cycle(5)
    part = classify_core(c5, 0, 1)
    with pytest.raises(ValueError):
        refine_counts(part, components_of_R(c5, part), c5, pentagon_reading="other")


def test_separations_pass_on_corpus():
    for g in connected_graphs_upto(6):
        for a, b in g.edges():
            for u, v in ((a, b), (b, a)):
                rep = verify_class_separations(g, classify_core(g, u, v))
                assert rep.ok, (g.adjacency, u, v, rep)


def test_separations_pass_on_counterexamples():
    for inst in (build_ce_bipartite(5), build_ce_girth5(6)):
        assert verify_class_separations(inst.graph, classify_core(inst.graph, *inst.edge)).ok


def test_separations_detect_corrupted_partition():
    # C4 u a b v with a pendant f on u: swapping f and the square vertex a
    g = from_pairs("uv ua ab bv uf")
    u, v, a, b, f = (g.index(x) for x in "uvabf")
    part = classify_core(g, u, v)
    assert part.square_u == {a} and part.fr_u == {f}
    bad = dataclasses.replace(part, square_u=frozenset({f}), fr_u=frozenset({a}))
    rep = verify_class_separations(g, bad)
    assert not rep.ok
    assert (a, b, "fr_u", "square_v") in rep.edge_violations


def _reference_class(g, u, v, a):
    """Class of a in N(u) from the distance to v with u deleted."""
    keep = [x for x in range(len(g)) if x != u]
    sub, _, new_of = induced_subgraph(g, keep)
    d = bfs_distances(sub, new_of[a], 3).get(new_of[v])
    return {1: "triangle", 2: "square_u", 3: "pentagon_u"}.get(d, "fr_u")


@settings(max_examples=200, deadline=None)
@given(small_graphs())
def test_partition_properties(g):
    for a, b in g.edges():
        for u, v in ((a, b), (b, a)):
            part = classify_core(g, u, v)
            sets = [getattr(part, n) for n in CLASS_NAMES]
            assert sum(map(len, sets)) + 2 == len(part.core)

            nu, nv = g.neighbours(u) - {v}, g.neighbours(v) - {u}
            assert part.triangle | part.square_u | part.pentagon_u | part.fr_u == nu
            assert part.triangle | part.square_v | part.pentagon_v | part.fr_v == nv
            du, dv = bfs_distances(g, u), bfs_distances(g, v)
            assert part.pentagon_uv == {w for w in range(len(g)) if du.get(w) == 2 and dv.get(w) == 2}
            for x in nu:
                assert part.class_of(x) == _reference_class(g, u, v, x)

            sw = classify_core(g, v, u)
            assert sw == part.swapped()

            comps = components_of_R(g, part)
            union = set()
            for c in comps:
                assert not union & set(c.vertices)
                union |= set(c.vertices)
                assert set().union(*(getattr(c, n) for n in R_CLASSES)) == set(c.vertices)
            assert union == part.R

            r = refine_counts(part, comps, g)
            assert r.sq_tri_u + r.sq_circ_u == len(part.square_u)
            assert r.sq_tri_v + r.sq_circ_v == len(part.square_v)
            assert verify_class_separations(g, part).ok
