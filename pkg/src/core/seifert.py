"""
Seifert 圆周与带符号 Seifert 图

支持：
- 保持定向的光滑化得到 Seifert 圆周
- 带符号的 Seifert 多重图（每个交叉一条边）
- 割点/块分解
- 齐性（每个块内边的符号一致）与正性判定
"""

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

import networkx as nx

from . import conventions
from .diagram import Diagram, State, resolve
from .errors import DisconnectedGraphError


@dataclass(frozen=True)
class SignedEdge:
    u: int
    v: int
    sign: int
    crossing: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class SignedGraph:
    """允许重边与自环的带符号图；边的编号即其在 edges 中的下标"""
    vertices: Tuple[int, ...]
    edges: Tuple[SignedEdge, ...]

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for index, e in enumerate(self.edges):
            g.add_edge(e.u, e.v, key=index, sign=e.sign, crossing=e.crossing)
        return g

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        return nx.is_connected(self.to_networkx())

    def to_dict(self) -> Dict:
        return {
            "vertices": list(self.vertices),
            "edges": [
                {"u": e.u, "v": e.v, "sign": e.sign, "crossing": e.crossing}
                for e in self.edges
            ],
        }


@dataclass(frozen=True)
class BlockDecomposition:
    cut_vertices: FrozenSet[int]
    blocks: Tuple[Tuple[int, ...], ...]  # 每个块包含的边编号


def seifert_state(d: Diagram) -> State:
    return State({c.id: conventions.seifert_smoothing(c.sign).value for c in d.crossings})


def seifert_circles(d: Diagram) -> List[FrozenSet[int]]:
    """Seifert 圆周，每个圆周是一组弧标签"""
    return list(resolve(d, seifert_state(d)).circles)


def seifert_graph(d: Diagram) -> SignedGraph:
    result = resolve(d, seifert_state(d))
    edges = []
    for c in d.crossings:
        u, v = result.touch[c.id]
        sign = conventions.seifert_edge_sign(c.seifert_type)
        edges.append(SignedEdge(u=min(u, v), v=max(u, v), sign=sign, crossing=c.id))
    return SignedGraph(vertices=tuple(range(result.circle_count)), edges=tuple(edges))


def blocks(g: SignedGraph) -> BlockDecomposition:
    """
    割点与块分解

    重边并入其端点对所在的块，自环单独成块；块按所含最小边编号排序。

    Raises:
        DisconnectedGraphError: 图不连通
    """
    if not g.is_connected():
        raise DisconnectedGraphError("block decomposition needs a connected graph")

    simple = nx.Graph()
    simple.add_nodes_from(g.vertices)
    simple.add_edges_from((e.u, e.v) for e in g.edges if not e.is_loop)

    block_of_pair: Dict[FrozenSet[int], int] = {}
    for index, component in enumerate(nx.biconnected_component_edges(simple)):
        for u, v in component:
            block_of_pair[frozenset((u, v))] = index

    grouped: Dict[Tuple[str, int], List[int]] = defaultdict(list)
    for index, e in enumerate(g.edges):
        if e.is_loop:
            grouped[("loop", index)].append(index)
        else:
            grouped[("block", block_of_pair[frozenset((e.u, e.v))])].append(index)

    ordered = sorted((tuple(sorted(members)) for members in grouped.values()), key=lambda b: b[0])
    return BlockDecomposition(
        cut_vertices=frozenset(nx.articulation_points(simple)),
        blocks=tuple(ordered),
    )


def is_homogeneous(d: Diagram) -> bool:
    """Seifert 图的每个块内所有边同号"""
    if d.n == 0:
        return True
    g = seifert_graph(d)
    for block in blocks(g).blocks:
        if len({g.edges[i].sign for i in block}) > 1:
            return False
    return True


def is_positive(d: Diagram) -> bool:
    return all(c.seifert_type is conventions.SeifertType.I for c in d.crossings)
