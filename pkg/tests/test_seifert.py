"""Seifert 圆周、块分解、齐性与正性"""

import pytest

from src.core.errors import DisconnectedGraphError
from src.core.seifert import (
    SignedEdge,
    SignedGraph,
    blocks,
    is_homogeneous,
    is_positive,
    seifert_circles,
    seifert_graph,
)


def test_trefoil_seifert_graph(trefoil):
    assert len(seifert_circles(trefoil)) == 2
    g = seifert_graph(trefoil)
    assert g.vertices == (0, 1)
    assert [e.sign for e in g.edges] == [1, 1, 1]
    assert [e.crossing for e in g.edges] == [1, 2, 3]
    assert all(e.u <= e.v for e in g.edges)


def test_seifert_circles_partition_the_arcs(catalog):
    for d in catalog.load_all():
        circles = seifert_circles(d)
        labels = sorted(label for circle in circles for label in circle)
        assert labels == list(range(1, d.arc_count + 1)), d.name


def test_parallel_edges_share_a_block(trefoil):
    decomposition = blocks(seifert_graph(trefoil))
    assert decomposition.blocks == ((0, 1, 2),)
    assert decomposition.cut_vertices == frozenset()


def test_figure_eight_has_two_blocks(figure_eight):
    g = seifert_graph(figure_eight)
    assert len(g.vertices) == 3
    decomposition = blocks(g)
    assert sorted(len(b) for b in decomposition.blocks) == [2, 2]
    assert len(decomposition.cut_vertices) == 1
    for block in decomposition.blocks:
        assert len({g.edges[i].sign for i in block}) == 1


def test_braid_closure_10_152(knot_10_152):
    g = seifert_graph(knot_10_152)
    assert len(g.vertices) == 3
    assert sorted(len(b) for b in blocks(g).blocks) == [5, 5]


def test_loops_are_their_own_blocks():
    g = SignedGraph(
        vertices=(0, 1, 2),
        edges=(
            SignedEdge(0, 1, 1, 1),
            SignedEdge(1, 1, -1, 2),
            SignedEdge(1, 2, -1, 3),
            SignedEdge(0, 1, 1, 4),
        ),
    )
    decomposition = blocks(g)
    assert decomposition.blocks == ((0, 3), (1,), (2,))
    assert decomposition.cut_vertices == frozenset({1})


def test_disconnected_graph_is_rejected():
    with pytest.raises(DisconnectedGraphError):
        blocks(SignedGraph(vertices=(0, 1), edges=()))


def test_signed_graph_export(trefoil):
    data = seifert_graph(trefoil).to_dict()
    assert data["vertices"] == [0, 1]
    assert data["edges"][0] == {"u": 0, "v": 1, "sign": 1, "crossing": 1}


def test_homogeneity(catalog):
    for name in ("unknot", "trefoil", "trefoil-left", "figure-eight", "10_152"):
        assert is_homogeneous(catalog.load(name)), name


def test_positivity(trefoil, trefoil_left, figure_eight, knot_10_152, unknot):
    assert is_positive(trefoil)
    assert is_positive(knot_10_152)
    assert is_positive(unknot)
    assert not is_positive(trefoil_left)
    assert not is_positive(figure_eight)
