"""
棋盘着色与增强棋盘有向图

每个交叉在有向图中对应一条有向带符号边，连接保持定向光滑化所合并的两个角区域，
从两条线的后方指向前方。图中不存在同时含正负边的有向通路时，链环图是交错型的。
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple

import networkx as nx

from . import conventions
from .diagram import ArcSide, Diagram, face_map
from .errors import DiagramError


class Color(Enum):
    BLACK = "black"
    WHITE = "white"

    @property
    def other(self) -> "Color":
        return Color.WHITE if self is Color.BLACK else Color.BLACK


@dataclass(frozen=True)
class Coloring:
    """区域编号 -> 颜色"""
    colors: Tuple[Color, ...]

    def __getitem__(self, face: int) -> Color:
        return self.colors[face]

    def complement(self) -> "Coloring":
        return Coloring(tuple(c.other for c in self.colors))

    def faces_of(self, color: Color) -> List[int]:
        return [i for i, c in enumerate(self.colors) if c is color]


@dataclass(frozen=True)
class DirectedSignedEdge:
    tail: int
    head: int
    sign: int
    crossing: int


@dataclass(frozen=True)
class SignedDigraph:
    vertices: Tuple[Tuple[int, Color], ...]
    edges: Tuple[DirectedSignedEdge, ...]

    def to_dict(self) -> Dict:
        return {
            "vertices": [{"id": v, "color": c.value} for v, c in self.vertices],
            "edges": [
                {"tail": e.tail, "head": e.head, "sign": e.sign, "crossing": e.crossing}
                for e in self.edges
            ],
        }


def face_adjacency(d: Diagram) -> nx.Graph:
    """区域邻接图：共享一条弧的两个区域相邻"""
    fm = face_map(d)
    g = nx.Graph()
    g.add_nodes_from(range(len(fm.faces)))
    for label in range(1, d.arc_count + 1):
        g.add_edge(fm.side_face[ArcSide(label, 1)], fm.side_face[ArcSide(label, -1)])
    return g


def two_coloring(d: Diagram, seed: Color = Color.WHITE) -> Coloring:
    """
    区域的正常二着色

    包含最小编号弧左侧的区域取 seed 颜色。

    Raises:
        DiagramError: 图不连通或区域无法二着色
    """
    fm = face_map(d)
    g = face_adjacency(d)
    source = fm.side_face[ArcSide(1, 1)]
    colors: Dict[int, Color] = {source: seed}
    for u, v in nx.bfs_edges(g, source):
        colors[v] = colors[u].other
    for u, v in g.edges():
        if colors[u] is colors[v]:
            raise DiagramError(f"faces {u} and {v} share an arc but have the same color")
    return Coloring(tuple(colors[i] for i in range(len(fm.faces))))


def corner_face(d: Diagram, crossing_id: int, corner: Tuple[int, int]) -> int:
    return face_map(d).dart_face[(crossing_id, conventions.corner_dart(corner))]


def enhanced_digraph(d: Diagram, col: Coloring) -> SignedDigraph:
    edges = []
    for c in d.crossings:
        row = conventions.digraph_row(c.sign)
        edges.append(DirectedSignedEdge(
            tail=corner_face(d, c.id, row.tail_corner),
            head=corner_face(d, c.id, row.head_corner),
            sign=row.edge_sign,
            crossing=c.id,
        ))
    vertices = tuple((i, col[i]) for i in range(len(col.colors)))
    return SignedDigraph(vertices=vertices, edges=tuple(edges))


def is_alternative_digraph(g: SignedDigraph, semi_walks: bool = False) -> bool:
    """
    不存在同时含正边和负边的通路

    有向模式：对任意异号边对 (e, f)，head(e) 都不能（自反传递地）到达 tail(f)。
    semi_walks 为真时允许逆向走边，此时每个弱连通分支内只能有一种符号。
    """
    if semi_walks:
        undirected = nx.MultiGraph()
        undirected.add_nodes_from(v for v, _ in g.vertices)
        for e in g.edges:
            undirected.add_edge(e.tail, e.head, sign=e.sign)
        for component in nx.connected_components(undirected):
            signs = {s for _, _, s in undirected.subgraph(component).edges(data="sign")}
            if len(signs) > 1:
                return False
        return True

    digraph = nx.DiGraph()
    digraph.add_nodes_from(v for v, _ in g.vertices)
    digraph.add_edges_from((e.tail, e.head) for e in g.edges)
    closure = nx.transitive_closure(digraph, reflexive=True)
    for e in g.edges:
        for f in g.edges:
            if e.sign != f.sign and closure.has_edge(e.head, f.tail):
                return False
    return True


def is_alternative(d: Diagram, semi_walks: bool = False) -> bool:
    if d.n == 0:
        return True
    return is_alternative_digraph(enhanced_digraph(d, two_coloring(d)), semi_walks=semi_walks)
