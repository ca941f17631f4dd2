"""棋盘着色与增强棋盘有向图"""

from src.core.checkerboard import (
    Color,
    DirectedSignedEdge,
    SignedDigraph,
    enhanced_digraph,
    face_adjacency,
    is_alternative,
    is_alternative_digraph,
    two_coloring,
)
from src.core.diagram import ArcSide, face_map


def _digraph(*edges):
    vertices = sorted({v for tail, head, _ in edges for v in (tail, head)})
    return SignedDigraph(
        vertices=tuple((v, Color.WHITE) for v in vertices),
        edges=tuple(DirectedSignedEdge(t, h, s, i) for i, (t, h, s) in enumerate(edges, 1)),
    )


def test_coloring_is_proper(catalog):
    for d in catalog.load_all():
        col = two_coloring(d)
        for u, v in face_adjacency(d).edges():
            assert col[u] is not col[v], d.name


def test_seed_color_and_complement(trefoil):
    col = two_coloring(trefoil)
    assert col[face_map(trefoil).side_face[ArcSide(1, 1)]] is Color.WHITE
    black = two_coloring(trefoil, seed=Color.BLACK)
    assert black == col.complement()
    assert sorted(col.faces_of(Color.WHITE) + col.faces_of(Color.BLACK)) == list(range(5))


def test_enhanced_digraph_has_one_edge_per_crossing(figure_eight):
    g = enhanced_digraph(figure_eight, two_coloring(figure_eight))
    assert len(g.vertices) == 6
    assert [e.crossing for e in g.edges] == [1, 2, 3, 4]
    assert sorted(e.sign for e in g.edges) == [-1, -1, 1, 1]


def test_positive_diagrams_have_positive_digraphs(trefoil):
    g = enhanced_digraph(trefoil, two_coloring(trefoil))
    assert {e.sign for e in g.edges} == {1}


def test_catalog_alternative_diagrams(catalog):
    for name in ("unknot", "trefoil", "trefoil-left", "figure-eight", "10_152"):
        assert is_alternative(catalog.load(name)), name


def test_mixed_directed_walk():
    assert not is_alternative_digraph(_digraph((0, 1, 1), (1, 2, -1)))


def test_mixed_walk_needs_direction():
    g = _digraph((0, 1, 1), (2, 1, -1))
    assert is_alternative_digraph(g)
    assert not is_alternative_digraph(g, semi_walks=True)


def test_single_sign_digraph_is_alternative():
    g = _digraph((0, 1, 1), (1, 2, 1), (2, 0, 1))
    assert is_alternative_digraph(g)
    assert is_alternative_digraph(g, semi_walks=True)


def test_digraph_export(trefoil):
    data = enhanced_digraph(trefoil, two_coloring(trefoil)).to_dict()
    assert len(data["vertices"]) == 5
    assert set(data["edges"][0]) == {"tail", "head", "sign", "crossing"}
