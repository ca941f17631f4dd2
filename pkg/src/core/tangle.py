"""
连分数与有理缠结块

支持：
- 连分数的斜率、取反和末项为 ±1 的化简
- 有理缠结块（和、积组成的表达式树）的文本语法，解析与打印逐字节往返
- 延拓判定（无向与有向）
- 把块渲染成带 NW/NE/SW/SE 四个端点的 PD 片段
- 两层块的参数提取，以及一般嵌套块的状态圆周增量

约定：slope([a_1, ..., a_n]) = 1/(a_1 + 1/(a_2 + ... + 1/a_n))，
Conway 分数是它的倒数。
"""

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from networkx.utils import UnionFind

from .bracket import BlockShape, ShapeMode, t_minus, t_plus
from .diagram import Diagram, build_diagram
from .errors import GrammarError, ShapeError, SingularContinuedFractionError, TangleError

ENDS = ("NW", "NE", "SW", "SE")

# 交叉图案沿逆时针的四个端点方向，下穿线在位置 0、2
POSITIVE_PICTURE = ("SE", "NE", "NW", "SW")
NEGATIVE_PICTURE = ("SW", "SE", "NE", "NW")

HOLE = "?"


# ---------------------------------------------------------------------------
# 连分数
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ContinuedFraction:
    denominators: Tuple[int, ...]

    def __post_init__(self):
        if not self.denominators:
            raise TangleError("a continued fraction needs at least one denominator")
        if any(a == 0 for a in self.denominators):
            raise TangleError(f"zero denominator in {list(self.denominators)}")

    @classmethod
    def of(cls, *denominators: int) -> "ContinuedFraction":
        return cls(tuple(int(a) for a in denominators))

    @property
    def sign(self) -> int:
        """所有分母同号时返回该符号，否则返回 0"""
        if all(a > 0 for a in self.denominators):
            return 1
        if all(a < 0 for a in self.denominators):
            return -1
        return 0

    @property
    def crossing_count(self) -> int:
        return sum(abs(a) for a in self.denominators)

    def __len__(self) -> int:
        return len(self.denominators)

    def to_text(self) -> str:
        return "[" + ",".join(str(a) for a in self.denominators) + "]"


def slope(cf: ContinuedFraction) -> Fraction:
    """
    β/α = 1/(a_1 + 1/(a_2 + ... + 1/a_n))，分母 α 为正

    Raises:
        SingularContinuedFractionError: 求值过程中出现 0（例如 [1, -1]）
    """
    value = Fraction(cf.denominators[-1])
    for a in reversed(cf.denominators[:-1]):
        value = a + 1 / value
        if value == 0:
            raise SingularContinuedFractionError(f"singular continued fraction {cf.to_text()}")
    return 1 / value


def conway_fraction(cf: ContinuedFraction) -> Fraction:
    return 1 / slope(cf)


def continued_fraction(beta: int, alpha: int) -> ContinuedFraction:
    """
    斜率 β/α 的同号连分数（0 < |β/α| ≤ 1）

    α/β 做带余除法得到的商序列即分母；负斜率取正斜率展开后整体取反。
    """
    value = Fraction(beta, alpha)
    if value == 0 or abs(value) > 1:
        raise TangleError(f"slope {value} has no sign-uniform continued fraction")
    sign = 1 if value > 0 else -1
    num, den = abs(value).denominator, abs(value).numerator
    quotients = []
    while den:
        q, r = divmod(num, den)
        quotients.append(q)
        num, den = den, r
    result = ContinuedFraction(tuple(quotients))
    return result if sign > 0 else negate(result)


def negate(cf: ContinuedFraction) -> ContinuedFraction:
    return ContinuedFraction(tuple(-a for a in cf.denominators))


def collapse_last(cf: ContinuedFraction) -> ContinuedFraction:
    """
    [a_1, ..., a_{n-1}, ±1] -> [a_1, ..., a_{n-1} ± 1]，斜率不变

    Raises:
        TangleError: 少于两个分母、末项不是 ±1，或合并后出现 0
    """
    *head, last = cf.denominators
    if not head or last not in (1, -1):
        raise TangleError(f"{cf.to_text()} does not end in ±1 after another denominator")
    merged = head[-1] + last
    if merged == 0:
        raise TangleError(f"collapsing {cf.to_text()} produces a zero denominator")
    return ContinuedFraction(tuple(head[:-1]) + (merged,))


# ---------------------------------------------------------------------------
# 块
# ---------------------------------------------------------------------------

class BlockKind(Enum):
    LEAF = "leaf"
    SUM = "S"
    PRODUCT = "P"


@dataclass(frozen=True)
class TangleBlock:
    """
    有理缠结块

    SUM 是把子块从左到右并排，PRODUCT 是从上到下堆叠（第一个子块在最上面）。
    """
    kind: BlockKind
    cf: Optional[ContinuedFraction] = None
    children: Tuple["TangleBlock", ...] = ()

    def __post_init__(self):
        if self.kind is BlockKind.LEAF:
            if self.cf is None or self.children:
                raise TangleError("a leaf holds exactly one continued fraction")
        elif self.cf is not None or not self.children:
            raise TangleError(f"{self.kind.value}(...) needs at least one child")

    @classmethod
    def leaf(cls, *denominators: int) -> "TangleBlock":
        return cls(BlockKind.LEAF, cf=ContinuedFraction.of(*denominators))

    @classmethod
    def sum(cls, *children: "TangleBlock") -> "TangleBlock":
        return cls(BlockKind.SUM, children=tuple(children))

    @classmethod
    def product(cls, *children: "TangleBlock") -> "TangleBlock":
        return cls(BlockKind.PRODUCT, children=tuple(children))

    @property
    def is_leaf(self) -> bool:
        return self.kind is BlockKind.LEAF

    def leaves(self) -> Iterator[ContinuedFraction]:
        """从左到右（从上到下）的叶子"""
        if self.is_leaf:
            yield self.cf
            return
        for child in self.children:
            yield from child.leaves()

    def to_text(self) -> str:
        if self.is_leaf:
            return self.cf.to_text()
        return f"{self.kind.value}(" + ",".join(c.to_text() for c in self.children) + ")"

    def __str__(self) -> str:
        return self.to_text()


_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<op>[SP])\s*\(|(?P<sym>[\[\],)?]))")


def _tokenize(text: str) -> List[str]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise GrammarError(f"unexpected character {text[pos:].strip()[:1]!r} at offset {pos}")
        if match.group("op"):
            tokens.append(match.group("op") + "(")
        else:
            tokens.append(match.group("int") or match.group("sym"))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, tokens: Sequence[str]):
        self.tokens = list(tokens)
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> str:
        token = self.peek()
        if token is None:
            raise GrammarError("unexpected end of block")
        if expected is not None and token != expected:
            raise GrammarError(f"expected {expected!r}, found {token!r}")
        self.pos += 1
        return token

    def block(self) -> TangleBlock:
        token = self.peek()
        if token == "[":
            return self.leaf()
        if token in ("S(", "P("):
            self.take()
            children = [self.block()]
            while self.peek() == ",":
                self.take(",")
                children.append(self.block())
            self.take(")")
            kind = BlockKind.SUM if token == "S(" else BlockKind.PRODUCT
            return TangleBlock(kind, children=tuple(children))
        raise GrammarError(f"expected '[', 'S(' or 'P(', found {token!r}")

    def leaf(self) -> TangleBlock:
        self.take("[")
        values = [self.integer()]
        while self.peek() == ",":
            self.take(",")
            values.append(self.integer())
        self.take("]")
        if any(v == 0 for v in values):
            raise GrammarError(f"zero denominator in {values}")
        return TangleBlock.leaf(*values)

    def integer(self) -> int:
        token = self.take()
        if not re.fullmatch(r"-?\d+", token):
            raise GrammarError(f"expected an integer, found {token!r}")
        return int(token)


def parse_block(text: str) -> TangleBlock:
    """
    解析块语法：tangle := "[" int ("," int)* "]"，
    block := tangle | "S(" block {"," block} ")" | "P(" block {"," block} ")"

    Raises:
        GrammarError: 语法错误
    """
    parser = _Parser(_tokenize(text))
    block = parser.block()
    if parser.peek() is not None:
        raise GrammarError(f"trailing input after block: {parser.peek()!r}")
    return block


def print_block(b: TangleBlock) -> str:
    return b.to_text()


@dataclass(frozen=True)
class BlockPattern:
    """带一个整数空位 ? 的块模板"""
    text: str

    def __post_init__(self):
        if self.text.count(HOLE) != 1:
            raise GrammarError(f"a pattern needs exactly one '{HOLE}' hole: {self.text!r}")
        self.instantiate(1)

    def instantiate(self, value: int) -> TangleBlock:
        return parse_block(self.text.replace(HOLE, str(value)))


# ---------------------------------------------------------------------------
# 延拓
# ---------------------------------------------------------------------------

def extends(b: TangleBlock, sign_c: int) -> bool:
    return all(cf.sign == sign_c for cf in b.leaves())


def negate_block(b: TangleBlock) -> TangleBlock:
    if b.is_leaf:
        return TangleBlock(BlockKind.LEAF, cf=negate(b.cf))
    return TangleBlock(b.kind, children=tuple(negate_block(c) for c in b.children))


def block_crossing_count(b: TangleBlock) -> int:
    return sum(cf.crossing_count for cf in b.leaves())


@dataclass(frozen=True)
class OrientedCrossingContext:
    """
    手术后片段中各交叉的定向信息

    writhes 与渲染顺序一致；手术找不到相容定向时为 None。
    """
    sign: int
    boxes: Tuple[int, ...]
    writhes: Optional[Tuple[int, ...]]


def orientation_failure(b: TangleBlock, ctx: OrientedCrossingContext) -> Optional[str]:
    """有向延拓失败的原因；成功时返回 None"""
    if not extends(b, ctx.sign):
        return "block does not extend the crossing"
    if ctx.writhes is None:
        return "no orientation extends"
    for box, writhe in zip(ctx.boxes, ctx.writhes):
        # 偶数号盒子旋转四分之一圈后才是水平交叉，类型随之反转
        box_type = writhe if box % 2 else -writhe
        expected = ctx.sign if box % 2 else -ctx.sign
        if box_type != expected:
            return f"a crossing in box {box} has the wrong type"
    return None


def orientation_extends(b: TangleBlock, ctx: OrientedCrossingContext) -> bool:
    return orientation_failure(b, ctx) is None


# ---------------------------------------------------------------------------
# 渲染
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RenderedCrossing:
    arcs: Tuple[int, int, int, int]
    picture_sign: int
    leaf: int  # 叶子在 leaves() 中的下标
    box: int  # 叶子内从 1 开始的盒子编号


@dataclass(frozen=True)
class TangleFragment:
    """开放的 PD 片段；每个端点标签在 crossings 中恰好出现一次"""
    crossings: Tuple[RenderedCrossing, ...]
    endpoints: Dict[str, int] = field(default_factory=dict)

    @property
    def label_count(self) -> int:
        return max((a for c in self.crossings for a in c.arcs), default=0)

    def endpoint_dart(self, end: str) -> Tuple[int, int]:
        label = self.endpoints[end]
        for i, c in enumerate(self.crossings):
            if label in c.arcs:
                return i, c.arcs.index(label)
        raise TangleError(f"endpoint {end} is not attached to a crossing")


Ends = Dict[str, int]


class _FragmentBuilder:
    def __init__(self):
        self._next = 0
        self._uf = UnionFind()
        self._crossings: List[Tuple[Tuple[int, ...], int, int, int]] = []
        self._leaf = -1

    def crossing(self, sign: int, box: int) -> Ends:
        ends = {}
        for end in ENDS:
            self._next += 1
            ends[end] = self._next
        picture = POSITIVE_PICTURE if sign > 0 else NEGATIVE_PICTURE
        self._crossings.append((tuple(ends[e] for e in picture), sign, self._leaf, box))
        return ends

    def beside(self, left: Ends, right: Ends) -> Ends:
        self._uf.union(left["NE"], right["NW"])
        self._uf.union(left["SE"], right["SW"])
        return {"NW": left["NW"], "SW": left["SW"], "NE": right["NE"], "SE": right["SE"]}

    def below(self, top: Ends, bottom: Ends) -> Ends:
        self._uf.union(top["SW"], bottom["NW"])
        self._uf.union(top["SE"], bottom["NE"])
        return {"NW": top["NW"], "NE": top["NE"], "SW": bottom["SW"], "SE": bottom["SE"]}

    def leaf(self, cf: ContinuedFraction) -> Ends:
        """
        第 i 个盒子放 |a_i| 个符号为 sign(a_i) 的交叉：奇数号横排，偶数号竖排。
        从最后一个盒子开始，奇数号盒子接在右侧，偶数号盒子接在下方。
        """
        self._leaf += 1
        boxes = []
        for i, a in enumerate(cf.denominators, 1):
            sign = 1 if a > 0 else -1
            pieces = [self.crossing(sign, i) for _ in range(abs(a))]
            boxes.append(reduce(self.beside if i % 2 else self.below, pieces))
        result = boxes[-1]
        for i in range(len(boxes) - 1, 0, -1):
            result = self.beside(result, boxes[i - 1]) if i % 2 else self.below(result, boxes[i - 1])
        return result

    def block(self, b: TangleBlock) -> Ends:
        if b.is_leaf:
            return self.leaf(b.cf)
        parts = [self.block(child) for child in b.children]
        return reduce(self.beside if b.kind is BlockKind.SUM else self.below, parts)

    def finish(self, ends: Ends) -> TangleFragment:
        relabel: Dict[int, int] = {}

        def label(x: int) -> int:
            root = self._uf[x]
            if root not in relabel:
                relabel[root] = len(relabel) + 1
            return relabel[root]

        crossings = tuple(
            RenderedCrossing(arcs=tuple(label(a) for a in arcs), picture_sign=sign, leaf=leaf, box=box)
            for arcs, sign, leaf, box in self._crossings
        )
        return TangleFragment(crossings=crossings, endpoints={e: label(ends[e]) for e in ENDS})


def render(b: TangleBlock) -> TangleFragment:
    builder = _FragmentBuilder()
    return builder.finish(builder.block(b))


def close_numerator(fragment: TangleFragment, name: Optional[str] = None) -> Diagram:
    """分子闭包：连接 NW~NE、SW~SE"""
    ends = fragment.endpoints
    joined = {ends["NE"]: ends["NW"], ends["SE"]: ends["SW"]}
    tuples = [tuple(joined.get(a, a) for a in c.arcs) for c in fragment.crossings]
    hints = [((i, 0), True) for i in range(len(tuples))]
    return build_diagram(tuples, hints, name=name)


# ---------------------------------------------------------------------------
# 块的形状与状态圆周增量
# ---------------------------------------------------------------------------

def _unwrap(b: TangleBlock) -> TangleBlock:
    while not b.is_leaf and len(b.children) == 1:
        b = b.children[0]
    return b


def _positive(cf: ContinuedFraction) -> Tuple[int, ...]:
    return tuple(abs(a) for a in cf.denominators)


def block_shape(b: TangleBlock) -> BlockShape:
    """
    两层块的参数 (mode, l, k, cf)，分母取绝对值

    单个叶子记为积和模式；只由叶子组成的积（和）按根节点的类型记模式。

    Raises:
        ShapeError: 块不同号，或者不是积和/和积两层结构
    """
    if not (extends(b, 1) or extends(b, -1)):
        raise ShapeError("block denominators do not share one sign")
    root = _unwrap(b)
    if root.is_leaf:
        return BlockShape(ShapeMode.PRODUCT_OF_SUMS, 1, (1,), ((_positive(root.cf),),))

    groups = [_unwrap(child) for child in root.children]
    inner_kind = BlockKind.SUM if root.kind is BlockKind.PRODUCT else BlockKind.PRODUCT
    cf = []
    for group in groups:
        if group.is_leaf:
            cf.append((_positive(group.cf),))
            continue
        members = [_unwrap(child) for child in group.children]
        if group.kind is not inner_kind or not all(m.is_leaf for m in members):
            raise ShapeError("shape not covered: blocks must be a product of sums or a sum of products")
        cf.append(tuple(_positive(m.cf) for m in members))

    mode = ShapeMode.PRODUCT_OF_SUMS if root.kind is BlockKind.PRODUCT else ShapeMode.SUM_OF_PRODUCTS
    return BlockShape(mode, len(cf), tuple(len(group) for group in cf), tuple(cf))


def block_state_circle_deltas(b: TangleBlock) -> Tuple[int, int]:
    """
    任意嵌套块替换正交叉后 |s_A|、|s_B| 的增量

    叶子贡献 (T+, T-)；k 个子块的和再加 (k-1, 0)，l 个子块的积再加 (0, l-1)。
    """
    if b.is_leaf:
        denominators = _positive(b.cf)
        return t_plus(denominators), t_minus(denominators)
    delta_a = delta_b = 0
    for child in b.children:
        a, bb = block_state_circle_deltas(child)
        delta_a += a
        delta_b += bb
    if b.kind is BlockKind.SUM:
        delta_a += len(b.children) - 1
    else:
        delta_b += len(b.children) - 1
    return delta_a, delta_b


def predict_block_extremes(M: int, m: int, b: TangleBlock) -> Tuple[int, int]:
    """M* = M - 1 + c(b) + 2Δ_A，m* = m + 1 - c(b) - 2Δ_B"""
    delta_a, delta_b = block_state_circle_deltas(b)
    count = block_crossing_count(b)
    return M - 1 + count + 2 * delta_a, m + 1 - count - 2 * delta_b


__all__ = [
    "BlockKind",
    "BlockPattern",
    "ContinuedFraction",
    "OrientedCrossingContext",
    "RenderedCrossing",
    "TangleBlock",
    "TangleFragment",
    "block_crossing_count",
    "block_shape",
    "block_state_circle_deltas",
    "close_numerator",
    "collapse_last",
    "continued_fraction",
    "conway_fraction",
    "extends",
    "negate",
    "negate_block",
    "orientation_extends",
    "orientation_failure",
    "parse_block",
    "predict_block_extremes",
    "print_block",
    "render",
    "slope",
]
