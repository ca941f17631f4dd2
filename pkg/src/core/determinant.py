"""
Tait 图与行列式

支持：
- 由棋盘着色构造带符号 Tait 图
- 生成树签名 s_v（穷举，作为对照）与带符号生成树和（加权矩阵树定理）
- 行列式 |Σ_v (-1)^v s_v|
- 在交叉处 A/B 光滑化得到 L_0/L_1，并计算 x、y
- 用有理缠结扭转后的行列式预测
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import sympy as sp
from networkx.utils import UnionFind

from . import conventions
from .checkerboard import Color, Coloring, two_coloring
from .conventions import Smoothing
from .diagram import Diagram, build_diagram, face_map, is_split
from .errors import DiagramError, ResourceLimitError
from .seifert import SignedEdge, SignedGraph

logger = logging.getLogger(__name__)

ENUMERATION_EDGE_LIMIT = 16


@dataclass(frozen=True)
class TaitGraph:
    """顶点为黑色区域编号，每个交叉一条边（SignedEdge.crossing 即来源交叉）"""
    graph: SignedGraph
    coloring: Coloring

    def edge_at(self, crossing_id: int) -> SignedEdge:
        for e in self.graph.edges:
            if e.crossing == crossing_id:
                return e
        raise DiagramError(f"unknown crossing {crossing_id}")


@dataclass(frozen=True)
class TreeSignature:
    """v -> 恰含 v 条正边的生成树个数"""
    counts: Dict[int, int] = field(default_factory=dict)

    def __getitem__(self, v: int) -> int:
        return self.counts.get(v, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def signed_sum(self) -> int:
        return sum((-1) ** v * s for v, s in self.counts.items())

    def to_dict(self) -> Dict[str, int]:
        return {str(v): s for v, s in sorted(self.counts.items())}


# ---------------------------------------------------------------------------
# Tait 图
# ---------------------------------------------------------------------------

def _positive_darts() -> Tuple[int, int]:
    return tuple(conventions.corner_dart(corner) for corner in conventions.positive_black_corners())


def _negative_darts() -> Tuple[int, int]:
    positive = set(_positive_darts())
    return tuple(p for p in range(4) if p not in positive)


def tait_sign(d: Diagram, col: Coloring, crossing_id: int) -> int:
    dart = _positive_darts()[0]
    face = face_map(d).dart_face[(crossing_id, dart)]
    return 1 if col[face] is Color.BLACK else -1


def tait_graph(d: Diagram, col: Coloring) -> TaitGraph:
    fm = face_map(d)
    black = col.faces_of(Color.BLACK)
    edges = []
    for c in d.crossings:
        sign = tait_sign(d, col, c.id)
        p, q = _positive_darts() if sign > 0 else _negative_darts()
        u, v = fm.dart_face[(c.id, p)], fm.dart_face[(c.id, q)]
        edges.append(SignedEdge(u=min(u, v), v=max(u, v), sign=sign, crossing=c.id))
    return TaitGraph(graph=SignedGraph(vertices=tuple(black), edges=tuple(edges)), coloring=col)


def choose_coloring_positive_at(d: Diagram, crossing_id: int) -> Coloring:
    """两种正常着色中使交叉 crossing_id 的 Tait 边为正的那一种"""
    col = two_coloring(d)
    if tait_sign(d, col, crossing_id) > 0:
        return col
    return col.complement()


# ---------------------------------------------------------------------------
# 生成树
# ---------------------------------------------------------------------------

def tree_signature(g: SignedGraph, limit: int = ENUMERATION_EDGE_LIMIT) -> TreeSignature:
    """
    穷举生成树，按正边数计数

    不连通的图没有生成树，返回全零签名。

    Raises:
        ResourceLimitError: 边数超过 limit
    """
    if len(g.edges) > limit:
        raise ResourceLimitError(
            f"spanning-tree enumeration is limited to {limit} edges, graph has {len(g.edges)}")
    size = len(g.vertices) - 1
    if size < 0:
        return TreeSignature()

    candidates = [e for e in g.edges if not e.is_loop]
    counts: Dict[int, int] = {}
    for subset in itertools.combinations(candidates, size):
        uf = UnionFind(g.vertices)
        acyclic = True
        for e in subset:
            if uf[e.u] == uf[e.v]:
                acyclic = False
                break
            uf.union(e.u, e.v)
        if acyclic:
            v = sum(1 for e in subset if e.sign > 0)
            counts[v] = counts.get(v, 0) + 1
    return TreeSignature(counts)


def signed_tree_sum(g: SignedGraph) -> int:
    """
    Σ_v (-1)^v s_v

    正边权 -1、负边权 +1 的约化 Laplace 矩阵行列式（Bareiss 精确消元）；自环忽略。
    """
    if len(g.vertices) <= 1:
        return 1 if g.vertices else 0
    index = {v: i for i, v in enumerate(g.vertices)}
    size = len(g.vertices)
    laplacian = sp.zeros(size, size)
    for e in g.edges:
        if e.is_loop:
            continue
        w = -1 if e.sign > 0 else 1
        i, j = index[e.u], index[e.v]
        laplacian[i, i] += w
        laplacian[j, j] += w
        laplacian[i, j] -= w
        laplacian[j, i] -= w
    return int(laplacian[1:, 1:].det(method="bareiss"))


def determinant(d: Diagram) -> int:
    """|Σ_v (-1)^v s_v(G)|；不连通的图行列式为 0"""
    if is_split(d):
        return 0
    return abs(signed_tree_sum(tait_graph(d, two_coloring(d)).graph))


# ---------------------------------------------------------------------------
# 光滑化与 x、y
# ---------------------------------------------------------------------------

def smooth_at(d: Diagram, crossing_id: int, which: Smoothing) -> Diagram:
    """
    在一个交叉处光滑化

    其余交叉保持原有顺序，编号为 1..n-1；光滑化后没有交叉的圈计入 free_loops。
    结果可能不连通（行列式为 0）。
    """
    target = d.crossing(crossing_id)
    uf = UnionFind(range(1, d.arc_count + 1))
    for u, v in target.smoothing_arcs(which):
        uf.union(u, v)

    rest = [c for c in d.crossings if c.id != crossing_id]
    tuples = [tuple(uf[a] for a in c.arcs) for c in rest]
    used = {label for t in tuples for label in t}
    loops = {uf[a] for a in target.arcs} - used

    hints = [((i, 0), True) for i in range(len(tuples))]
    return build_diagram(tuples, hints, free_loops=d.free_loops + len(loops))


def induced_coloring(parent: Diagram, col: Coloring, smoothed: Diagram,
                     first_surviving: Optional[int]) -> Optional[Coloring]:
    """
    光滑化后的图从父图继承着色

    区域颜色逐面继承，因此只需让第一个保留交叉的 Tait 符号与父图一致。
    不连通的图返回 None。
    """
    if is_split(smoothed):
        return None
    own = two_coloring(smoothed)
    if first_surviving is None:
        return own
    wanted = tait_sign(parent, col, first_surviving)
    if tait_sign(smoothed, own, 1) == wanted:
        return own
    return own.complement()


def _signed_sum_with(parent: Diagram, col: Coloring, crossing_id: int, which: Smoothing) -> int:
    smoothed = smooth_at(parent, crossing_id, which)
    survivors = [c.id for c in parent.crossings if c.id != crossing_id]
    inherited = induced_coloring(parent, col, smoothed, survivors[0] if survivors else None)
    if inherited is None:
        return 0
    return signed_tree_sum(tait_graph(smoothed, inherited).graph)


def xy_values(d: Diagram, crossing_id: int) -> Tuple[int, int]:
    """
    x = Σ_v (-1)^v s_{v-1}(L_0)，y = Σ_v (-1)^v s_v(L_1)

    着色取在交叉处 Tait 边为正的那一种，L_0、L_1 继承该着色。
    """
    col = choose_coloring_positive_at(d, crossing_id)
    x = -_signed_sum_with(d, col, crossing_id, Smoothing.A)
    y = _signed_sum_with(d, col, crossing_id, Smoothing.B)
    logger.debug("xy at crossing %d: x=%d y=%d", crossing_id, x, y)
    return x, y


def sign_of(value: int) -> int:
    """sign(0) 取 +1"""
    return -1 if value < 0 else 1


def predict_twisted_det(alpha: int, beta: int, det0: int, det1: int, sign_xy: int, sign_c: int) -> int:
    if sign_c > 0:
        return abs(alpha * det0 + sign_xy * beta * det1)
    return abs(alpha * det1 + sign_xy * beta * det0)


def predict_integer_twist_signature(a: int, sig0: TreeSignature, sig1: TreeSignature) -> TreeSignature:
    """
    把正交叉换成 a 个交叉的整数缠结 [a] 后的生成树签名

    新的 a 条边互相平行：生成树要么不含其中任何一条（对应 L_1 的生成树），
    要么恰含一条（对应 L_0 的生成树再加一条正边）。
    """
    counts: Dict[int, int] = dict(sig1.counts)
    for v, s in sig0.counts.items():
        counts[v + 1] = counts.get(v + 1, 0) + a * s
    return TreeSignature({v: s for v, s in counts.items() if s})


def smoothed_signatures(d: Diagram, crossing_id: int) -> Tuple[TreeSignature, TreeSignature]:
    """(s(L_0), s(L_1))，着色与 xy_values 相同；不连通的一侧为空签名"""
    col = choose_coloring_positive_at(d, crossing_id)
    survivors = [c.id for c in d.crossings if c.id != crossing_id]
    result: List[TreeSignature] = []
    for which in (Smoothing.A, Smoothing.B):
        smoothed = smooth_at(d, crossing_id, which)
        inherited = induced_coloring(d, col, smoothed, survivors[0] if survivors else None)
        if inherited is None:
            result.append(TreeSignature())
        else:
            result.append(tree_signature(tait_graph(smoothed, inherited).graph))
    return result[0], result[1]


__all__ = [
    "TaitGraph",
    "TreeSignature",
    "choose_coloring_positive_at",
    "determinant",
    "induced_coloring",
    "predict_integer_twist_signature",
    "predict_twisted_det",
    "sign_of",
    "signed_tree_sum",
    "smooth_at",
    "smoothed_signatures",
    "tait_graph",
    "tait_sign",
    "tree_signature",
    "xy_values",
]
