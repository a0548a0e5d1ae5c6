from __future__ import annotations

import random

import pytest

from facecolor import pd
from facecolor.invariants import color_bracket, pk_bracket
from facecolor.ribbon import (
    RibbonGraph,
    RibbonGraphError,
    blowup,
    check,
    diagram_to_graph,
    dumps_graph,
    immerse,
    isaacs_jm,
    loads_graph,
    matched_site_edges,
    perfect_matchings,
    with_matching,
)
from facecolor.sampling import random_matched_cubic

from conftest import load_graph


# planar theta: opposite cyclic orders at the two endpoints
THETA = RibbonGraph(
    rotations=((0, 1, 2), (3, 5, 4)),
    edges=((0, 3), (1, 4), (2, 5)),
    matching=(0,),
)


def test_check_rejects_bad_structures():
    with pytest.raises(RibbonGraphError):
        check(RibbonGraph(((0, 1, 0),), ((0, 1),)))  # repeated half-edge
    with pytest.raises(RibbonGraphError):
        check(RibbonGraph(((0, 1, 2), (3, 4, 5)), ((0, 3), (1, 4))))  # 2,5 unpaired
    with pytest.raises(RibbonGraphError):
        # matching edge is a loop
        check(RibbonGraph(((0, 1, 2),), ((0, 1),), (0,)))
    with pytest.raises(RibbonGraphError):
        # vertex covered twice
        g = RibbonGraph(((0, 1, 2), (3, 4, 5)), ((0, 3), (1, 4), (2, 5)), (0, 1))
        check(g)


def test_theta_immersion(theta):
    assert immerse(THETA) == theta


def test_immerse_requires_trivalent_matched():
    with pytest.raises(RibbonGraphError):
        immerse(RibbonGraph(((0, 1), (2, 3)), ((0, 2), (1, 3)), (0,)))
    with pytest.raises(RibbonGraphError):
        immerse(RibbonGraph(THETA.rotations, THETA.edges, None))


def test_perfect_matchings_petersen():
    graph = load_graph("petersen.graph")
    matchings = perfect_matchings(graph)
    assert len(matchings) == 6
    assert matchings == sorted(matchings)
    assert graph.matching in matchings


def test_with_matching_round_trip():
    graph = load_graph("petersen.graph")
    for m in perfect_matchings(graph):
        assert with_matching(graph, m).matching == m


def test_blowup_counts():
    graph = load_graph("petersen.graph")
    bu = blowup(graph)
    assert bu.num_vertices == 30  # one per half-edge
    assert len(bu.edges) == 45  # 15 originals + 30 cycle edges
    assert len(bu.matching) == 15  # every original edge is matched
    check(bu)


def test_blowup_isolated_vertex_becomes_free_loop():
    g = RibbonGraph(((),), ())
    assert blowup(g).free_loops == 1


def test_blowup_of_single_loop_vertex():
    # one vertex with a loop: blows up to a theta-like two-cycle
    g = RibbonGraph(((0, 1),), ((0, 1),))
    bu = blowup(g)
    assert bu.num_vertices == 2
    assert len(bu.edges) == 3
    check(bu)


def test_immersion_invariance_under_vertex_relabeling(theta):
    # same ribbon structure, shuffled vertex order: brackets agree
    relabeled = RibbonGraph(
        rotations=((3, 5, 4), (0, 1, 2)),
        edges=((3, 0), (4, 1), (5, 2)),
        matching=(0,),
    )
    assert pk_bracket(immerse(relabeled)) == pk_bracket(immerse(THETA))


def test_diagram_to_graph_inverts_immerse(j3, k33):
    for d in (j3, k33):
        g = diagram_to_graph(d)
        again = immerse(g)
        assert pk_bracket(again) == pk_bracket(d)
        assert color_bracket(again) == color_bracket(d)


def test_random_graphs_immerse_consistently():
    rng = random.Random(7)
    for _ in range(25):
        g = random_matched_cubic(rng, rng.choice([2, 4, 6]))
        d = immerse(g)
        assert d.num_matchings == g.num_vertices // 2
        assert pk_bracket(d) == color_bracket(d)


def test_matched_site_edges_structure():
    quads = matched_site_edges(THETA)
    assert len(quads) == 1
    assert sorted(quads[0]) == [1, 1, 2, 2]


def test_isaacs_family_base_case(j3):
    gen = isaacs_jm(3)
    assert pk_bracket(gen) == pk_bracket(j3)

    def canon(tuples):
        return sorted(min(t, t[2:] + t[:2]) for t in tuples)

    # tuples agree up to the rotation-by-two symmetry and list order
    assert canon(gen.matchings) == canon(j3.matchings)
    assert sorted(gen.virtuals) == sorted(j3.virtuals)


def test_isaacs_family_general():
    j5 = isaacs_jm(5)
    assert j5.num_matchings == 10
    assert j5.num_virtuals == 5
    poly = pk_bracket(j5)
    assert poly == color_bracket(j5)
    assert not poly.is_zero()


def test_isaacs_family_rejects_bad_m():
    for m in (1, 2, 4, 0, -3):
        with pytest.raises(ValueError):
            isaacs_jm(m)


def test_graph_format_round_trip():
    for name in ("petersen.graph", "j3.graph", "k33.graph", "doubletheta.graph"):
        g = load_graph(name)
        assert loads_graph(dumps_graph(g)) == g


def test_graph_json_format():
    text = """
    {"vertices": [[0,1,2],[3,4,5]], "edges": [[0,3],[1,4],[2,5]],
     "matching": [[0,3]], "loops": 1}
    """
    g = loads_graph(text)
    assert g.matching == (0,)
    assert g.free_loops == 1


def test_graph_format_errors():
    with pytest.raises(RibbonGraphError):
        loads_graph("vertex 0: 1 2 3\nedge: 1 2\nedge: 3 4\n")  # 4 unknown
    with pytest.raises(RibbonGraphError):
        loads_graph("junk line\n")
