"""
扭转：用有理缠结块替换交叉

支持：
- 单个交叉的替换手术（无向或要求有向延拓）
- 按带空位的模板生成无穷族
- 椒盐卷饼图与 Montesinos 图的构造
- 验证所用的随机延拓块
"""

import itertools
import logging
import math
import random
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from .bracket import ShapeMode
from .diagram import Crossing, Diagram, Hint, assemble_with_hints
from .errors import ExtensionError, ResourceLimitError, TangleError
from .tangle import (
    ENDS,
    BlockKind,
    BlockPattern,
    OrientedCrossingContext,
    TangleBlock,
    close_numerator,
    extends,
    orientation_failure,
    render,
)

logger = logging.getLogger(__name__)

MAX_FREE_ORIENTATIONS = 10

# 端点方向 -> 交叉元组中的位置；[±1] 在该框架下恰好还原原交叉
_POSITIVE_FRAME = {"SE": 0, "NE": 1, "NW": 2, "SW": 3}
_NEGATIVE_FRAME = {"SW": 0, "SE": 1, "NE": 2, "NW": 3}


@dataclass(frozen=True)
class TwistSpec:
    crossing: int
    block: TangleBlock
    oriented: bool = False

    def to_dict(self) -> Dict:
        return {"crossing": self.crossing, "block": self.block.to_text(), "oriented": self.oriented}


def gluing_frame(c: Crossing) -> Dict[str, int]:
    """交叉四个端点方向上的弧标签"""
    frame = _POSITIVE_FRAME if c.sign > 0 else _NEGATIVE_FRAME
    return {end: c.arcs[pos] for end, pos in frame.items()}


def replace_crossing(d: Diagram, spec: TwistSpec) -> Diagram:
    """
    切掉目标交叉，把渲染好的块按端点粘回

    片段的交叉按顺序插在原交叉的位置上，所有交叉重新编号为 1..n*。
    交叉数为 n - 1 + c(b)。

    Raises:
        DiagramError: 交叉不存在
        ExtensionError: 块不延拓该交叉，或有向模式下没有相容的定向
    """
    target = d.crossing(spec.crossing)
    if not extends(spec.block, target.sign):
        raise ExtensionError(
            f"block {spec.block} does not extend crossing {target.id} of sign {target.sign:+d}")

    fragment = render(spec.block)
    offset = d.arc_count
    frame = gluing_frame(target)

    # 片段端点与原交叉的弧合并；原交叉的弧可能在该交叉上出现两次
    merge: Dict[int, int] = {}

    def root(x: int) -> int:
        while x in merge:
            x = merge[x]
        return x

    for end in ENDS:
        a, b = root(frame[end]), root(fragment.endpoints[end] + offset)
        if a != b:
            merge[b] = a

    index = d.index_of(target.id)
    before, after = d.crossings[:index], d.crossings[index + 1:]
    tuples: List[Tuple[int, ...]] = []
    tuples.extend(tuple(root(a) for a in c.arcs) for c in before)
    tuples.extend(tuple(root(a + offset) for a in rc.arcs) for rc in fragment.crossings)
    tuples.extend(tuple(root(a) for a in c.arcs) for c in after)

    own = [i for i in range(len(tuples)) if not index <= i < index + len(fragment.crossings)]
    hints: List[Hint] = [((i, 0), True) for i in own]
    for end in ENDS:
        j, p = fragment.endpoint_dart(end)
        hints.append(((index + j, p), end in ("SW", "SE")))

    if not spec.oriented:
        twisted = assemble_with_hints(tuples, hints, free_loops=d.free_loops).diagram
        logger.debug("crossing %d of %s replaced by %s: %d crossings",
                     target.id, d.name or "diagram", spec.block, twisted.n)
        return twisted

    return _oriented_surgery(tuples, hints, d, target, spec, index, len(fragment.crossings),
                             tuple(rc.box for rc in fragment.crossings))


def _oriented_surgery(tuples, hints, d: Diagram, target: Crossing, spec: TwistSpec,
                      index: int, size: int, boxes: Tuple[int, ...]) -> Diagram:
    first = assemble_with_hints(tuples, hints, free_loops=d.free_loops)
    if first.hintless > MAX_FREE_ORIENTATIONS:
        raise ResourceLimitError(
            f"{first.hintless} closed strands inside the block, at most {MAX_FREE_ORIENTATIONS} are enumerated")

    reason = "no orientation extends"
    for choices in itertools.product((False, True), repeat=first.hintless):
        attempt = assemble_with_hints(tuples, hints, free_loops=d.free_loops, choices=choices)
        writhes = None
        if attempt.conflicts == 0:
            writhes = tuple(c.sign for c in attempt.diagram.crossings[index:index + size])
        ctx = OrientedCrossingContext(sign=target.sign, boxes=boxes, writhes=writhes)
        failure = orientation_failure(spec.block, ctx)
        if failure is None:
            return attempt.diagram
        reason = failure
    raise ExtensionError(f"block {spec.block} at crossing {target.id}: {reason}")


def generate_family(
    d: Diagram,
    crossing: int,
    pattern: BlockPattern,
    values: Iterable[int],
    oriented: bool = False,
) -> Iterator[Tuple[int, TangleBlock, Diagram]]:
    """按 values 的顺序惰性地产生 (k, 块, 扭转后的图)"""
    for k in values:
        block = pattern.instantiate(k)
        yield k, block, replace_crossing(d, TwistSpec(crossing, block, oriented))


# ---------------------------------------------------------------------------
# 椒盐卷饼与 Montesinos
# ---------------------------------------------------------------------------

def _column(p: int) -> TangleBlock:
    """p 个竖直排列的同号交叉"""
    sign = 1 if p > 0 else -1
    if abs(p) == 1:
        return TangleBlock.leaf(sign)
    return TangleBlock.product(*(TangleBlock.leaf(sign) for _ in range(abs(p))))


def pretzel(p: Sequence[int]) -> Diagram:
    """
    椒盐卷饼图：各列并排后取分子闭包

    Raises:
        TangleError: 少于两列或某列为 0
    """
    if len(p) < 2:
        raise TangleError("a pretzel diagram needs at least two strands")
    if any(x == 0 for x in p):
        raise TangleError(f"pretzel strands must be nonzero, got {list(p)}")
    block = TangleBlock.sum(*(_column(x) for x in p))
    name = "pretzel(" + ",".join(str(x) for x in p) + ")"
    return close_numerator(render(block), name=name)


def _regular_quotients(alpha: int, beta: int) -> List[int]:
    quotients = []
    while beta:
        q, r = divmod(alpha, beta)
        quotients.append(q)
        alpha, beta = beta, r
    return quotients


def _montesinos_column(alpha: int, beta: int, sign: int) -> TangleBlock:
    """
    斜率 β/α 的有理缠结列：竖排 c_1 个交叉，下面接 [c_2, ..., c_m]

    其中 α/β = c_1 + 1/(c_2 + ...)。
    """
    c1, *rest = _regular_quotients(alpha, beta)
    crossings = [TangleBlock.leaf(sign) for _ in range(c1)]
    if rest:
        crossings.append(TangleBlock.leaf(*(sign * c for c in rest)))
    if len(crossings) == 1:
        return crossings[0]
    return TangleBlock.product(*crossings)


def _check_fraction(numerator: int, denominator: int, positive: bool):
    a, b = abs(numerator), abs(denominator)
    if denominator == 0 or (numerator * denominator > 0) != positive:
        raise TangleError(f"fraction {numerator}/{denominator} has the wrong sign")
    if a <= 1 or math.gcd(a, b) != 1 or not 0 < b < a:
        raise TangleError(f"fraction {numerator}/{denominator} must satisfy 0 < |β| < |α|, gcd 1")


def montesinos(pos_fractions: Sequence[Tuple[int, int]], neg_fractions: Sequence[Tuple[int, int]]) -> Diagram:
    """
    Montesinos 图：pretzel(2,...,2,-2,...,-2) 的每一列换成对应斜率的有理缠结

    Raises:
        TangleError: 分数不满足约束，或者正负分数各少于两个
    """
    if len(pos_fractions) < 2 or len(neg_fractions) < 2:
        raise TangleError("a Montesinos diagram needs at least two positive and two negative fractions")
    columns = []
    for alpha, beta in pos_fractions:
        _check_fraction(alpha, beta, positive=True)
        columns.append(_montesinos_column(alpha, beta, 1))
    for gamma, delta in neg_fractions:
        _check_fraction(gamma, delta, positive=False)
        columns.append(_montesinos_column(abs(gamma), abs(delta), -1))

    def fmt(pairs):
        return ",".join(f"{a}/{b}" for a, b in pairs)

    name = f"montesinos({fmt(pos_fractions)};{fmt(neg_fractions)})"
    return close_numerator(render(TangleBlock.sum(*columns)), name=name)


# ---------------------------------------------------------------------------
# 随机块
# ---------------------------------------------------------------------------

def _count(groups: List[List[List[int]]]) -> int:
    return sum(a for group in groups for leaf in group for a in leaf)


def _trim(groups: List[List[List[int]]], limit: int):
    """依次减小最大分母、去掉末尾分母、去掉叶子、去掉组，直到交叉数不超过 limit"""
    while _count(groups) > limit:
        entries = [(a, gi, li, ai) for gi, group in enumerate(groups)
                   for li, leaf in enumerate(group) for ai, a in enumerate(leaf)]
        largest = max(entries, key=lambda e: (e[0], -e[1], -e[2], -e[3]))
        if largest[0] > 1:
            _, gi, li, ai = largest
            groups[gi][li][ai] -= 1
            continue
        long_leaves = [leaf for group in groups for leaf in group if len(leaf) > 1]
        if long_leaves:
            long_leaves[-1].pop()
            continue
        wide_groups = [group for group in groups if len(group) > 1]
        if wide_groups:
            wide_groups[-1].pop()
            continue
        groups.pop()


def _build(groups: List[List[List[int]]], mode: ShapeMode, sign: int) -> TangleBlock:
    inner = BlockKind.SUM if mode is ShapeMode.PRODUCT_OF_SUMS else BlockKind.PRODUCT
    outer = BlockKind.PRODUCT if inner is BlockKind.SUM else BlockKind.SUM
    parts = []
    for group in groups:
        leaves = tuple(TangleBlock.leaf(*(sign * a for a in leaf)) for leaf in group)
        parts.append(leaves[0] if len(leaves) == 1 else TangleBlock(inner, children=leaves))
    return parts[0] if len(parts) == 1 else TangleBlock(outer, children=tuple(parts))


def _random_leaf(rng: random.Random) -> List[int]:
    return [rng.randint(1, 3) for _ in range(rng.randint(1, 3))]


def random_extending_block(seed: int, sign: int, max_crossings: int) -> TangleBlock:
    """
    随机的两层块（积和或和积），所有分母的符号为 sign，交叉数不超过 max_crossings

    同一个 seed 总是得到同一个块。
    """
    if max_crossings < 1:
        raise TangleError("max_crossings must be at least 1")
    rng = random.Random(seed)
    mode = rng.choice((ShapeMode.PRODUCT_OF_SUMS, ShapeMode.SUM_OF_PRODUCTS))
    groups = [[_random_leaf(rng) for _ in range(rng.randint(1, 3))] for _ in range(rng.randint(1, 3))]
    _trim(groups, max_crossings)
    return _build(groups, mode, sign)


def random_rational_tangle(seed: int, sign: int, max_crossings: int) -> TangleBlock:
    """单个有理缠结 [a_1, ..., a_m]，m ≤ 3，1 ≤ a_i ≤ 3"""
    if max_crossings < 1:
        raise TangleError("max_crossings must be at least 1")
    rng = random.Random(seed)
    groups = [[_random_leaf(rng)]]
    _trim(groups, max_crossings)
    return _build(groups, ShapeMode.PRODUCT_OF_SUMS, sign)


__all__ = [
    "TwistSpec",
    "generate_family",
    "gluing_frame",
    "montesinos",
    "pretzel",
    "random_extending_block",
    "random_rational_tangle",
    "replace_crossing",
]
