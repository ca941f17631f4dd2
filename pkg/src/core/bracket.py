"""
Kauffman 括号多项式

支持：
- 平面收缩的动态规划求值（精确整数系数）
- 朴素的 2^n 状态求和，作为对照
- 极值指数、充分图的极值公式
- 用有理缠结块扭转后状态圆周数与极值指数的预测
- 在八次单位根处求值得到行列式
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

from ..config import get_env_config
from .conventions import Smoothing
from .diagram import Diagram, is_adequate, iter_states, resolve, all_A, all_B
from .errors import NotAdequateError, ResourceLimitError, ShapeError, ToleranceError
from .laurent import LaurentPoly

logger = logging.getLogger(__name__)

ROUNDING_TOLERANCE = 1e-6

_Pairing = Tuple[Tuple[int, int], ...]


class ShapeMode(Enum):
    PRODUCT_OF_SUMS = "product-of-sums"
    SUM_OF_PRODUCTS = "sum-of-products"


@dataclass(frozen=True)
class BlockShape:
    """
    两层块的参数

    积和模式下 l 个因子依次是 k_1..k_l 个有理缠结之和；和积模式相反。
    cf[i][j] 是第 i 组第 j 个缠结的分母序列，全部为正。
    """
    mode: ShapeMode
    l: int
    k: Tuple[int, ...]
    cf: Tuple[Tuple[Tuple[int, ...], ...], ...]

    def __post_init__(self):
        if self.l < 1 or len(self.k) != self.l or len(self.cf) != self.l:
            raise ShapeError(f"inconsistent shape dimensions: l={self.l}, k={self.k}")
        for k_n, group in zip(self.k, self.cf):
            if k_n < 1 or len(group) != k_n:
                raise ShapeError(f"group size {k_n} does not match {len(group)} tangles")
            for denominators in group:
                if not denominators or any(a < 1 for a in denominators):
                    raise ShapeError(f"denominators must be positive, got {list(denominators)}")

    def leaves(self):
        for group in self.cf:
            yield from group

    @property
    def crossing_count(self) -> int:
        return sum(sum(leaf) for leaf in self.leaves())


def _limit(max_n: Optional[int]) -> int:
    return get_env_config().max_n if max_n is None else max_n


def _check_size(d: Diagram, max_n: Optional[int]):
    limit = _limit(max_n)
    if d.n > limit:
        raise ResourceLimitError(
            f"diagram has {d.n} crossings, state sum limit is {limit} (TANGLETWIST_MAX_N)")


def _join(pairing: Dict[int, int], u: int, v: int) -> int:
    """在 u、v 两段弧之间连接；返回闭合的圆周数"""
    if u == v:
        return 1
    u_open = u in pairing
    v_open = v in pairing
    if not u_open and not v_open:
        pairing[u] = v
        pairing[v] = u
    elif u_open and not v_open:
        pu = pairing.pop(u)
        pairing[pu] = v
        pairing[v] = pu
    elif v_open and not u_open:
        pv = pairing.pop(v)
        pairing[pv] = u
        pairing[u] = pv
    else:
        pu = pairing.pop(u)
        pv = pairing.pop(v)
        if pu == v:
            return 1
        pairing[pu] = pv
        pairing[pv] = pu
    return 0


def _freeze(pairing: Dict[int, int]) -> _Pairing:
    return tuple(sorted((a, b) for a, b in pairing.items() if a < b))


def bracket(d: Diagram, max_n: Optional[int] = None) -> LaurentPoly:
    """
    <D> = Σ_s A^σ(s) δ^(|sD|-1)，δ = -A^2 - A^-2

    逐个收缩交叉，每次选择已打开弧最多的交叉；中间状态按开放弧的配对合并。

    Raises:
        ResourceLimitError: 交叉数超过上限
    """
    _check_size(d, max_n)
    delta = LaurentPoly.delta()
    if d.n == 0:
        return delta ** (d.free_loops - 1)

    weights = {Smoothing.A: LaurentPoly.monomial(1), Smoothing.B: LaurentPoly.monomial(-1)}
    states: Dict[Tuple[_Pairing, bool], LaurentPoly] = {((), False): LaurentPoly.one()}
    processed: Dict[int, int] = defaultdict(int)
    remaining = list(d.crossings)

    while remaining:
        crossing = max(
            remaining,
            key=lambda c: (sum(1 for a in set(c.arcs) if processed[a] == 1), -c.id),
        )
        remaining.remove(crossing)
        merged: Dict[Tuple[_Pairing, bool], LaurentPoly] = {}
        for (key, closed_any), poly in states.items():
            for choice, weight in weights.items():
                pairing = dict(key)
                pairing.update({b: a for a, b in key})
                loops = 0
                for u, v in crossing.smoothing_arcs(choice):
                    loops += _join(pairing, u, v)
                factor = weight
                first = closed_any
                for _ in range(loops):
                    if first:
                        factor = factor * delta
                    first = True
                state_key = (_freeze(pairing), first)
                merged[state_key] = merged.get(state_key, LaurentPoly.zero()) + poly * factor
        states = {k: p for k, p in merged.items() if not p.is_zero()}
        for a in crossing.arcs:
            processed[a] += 1
        logger.debug("crossing %d contracted, %d partial states", crossing.id, len(states))

    total = LaurentPoly.zero()
    for poly in states.values():
        total = total + poly
    return total * delta ** d.free_loops


def state_sum(d: Diagram, max_n: Optional[int] = None) -> LaurentPoly:
    """逐个枚举 2^n 个状态的括号多项式"""
    _check_size(d, max_n)
    delta = LaurentPoly.delta()
    total = LaurentPoly.zero()
    for s in iter_states(d):
        circles = resolve(d, s).circle_count
        total = total + LaurentPoly.monomial(s.sigma) * delta ** (circles - 1)
    return total


def extreme_powers(p: LaurentPoly) -> Tuple[int, int]:
    """(最高指数, 最低指数)"""
    if p.is_zero():
        raise ValueError("the zero polynomial has no extreme powers")
    exponents = p.coefficients.keys()
    return max(exponents), min(exponents)


def adequate_extremes(d: Diagram) -> Tuple[int, int]:
    """
    充分图的极值指数：M = n + 2(|s_A D| - 1)，m = -n - 2(|s_B D| - 1)

    Raises:
        NotAdequateError: 图不充分
    """
    if not is_adequate(d):
        raise NotAdequateError("extreme-power formulas need an adequate diagram")
    s_a = resolve(d, all_A(d)).circle_count
    s_b = resolve(d, all_B(d)).circle_count
    return d.n + 2 * (s_a - 1), -d.n - 2 * (s_b - 1)


def t_plus(denominators) -> int:
    odd = sum(denominators[0::2])
    return odd - (1 if len(denominators) % 2 else 0)


def t_minus(denominators) -> int:
    even = sum(denominators[1::2])
    return even - (0 if len(denominators) % 2 else 1)


def predict_state_circle_deltas(b: BlockShape) -> Tuple[int, int]:
    """扭转后 |s_A|、|s_B| 的增量"""
    t_a = sum(t_plus(leaf) for leaf in b.leaves())
    t_b = sum(t_minus(leaf) for leaf in b.leaves())
    inner = sum(k_n - 1 for k_n in b.k)
    outer = b.l - 1
    if b.mode is ShapeMode.PRODUCT_OF_SUMS:
        return t_a + inner, t_b + outer
    return t_a + outer, t_b + inner


def predict_twisted_extremes(M: int, m: int, b: BlockShape) -> Tuple[int, int]:
    """
    用两层块替换正交叉后的极值指数

    和积模式下交换 2Σ(k_n-1)-1 与 -2l+3 两项并变号。
    """
    total = b.crossing_count
    t_a = sum(t_plus(leaf) for leaf in b.leaves())
    t_b = sum(t_minus(leaf) for leaf in b.leaves())
    top_term = 2 * sum(k_n - 1 for k_n in b.k) - 1
    bottom_term = -2 * b.l + 3
    if b.mode is ShapeMode.SUM_OF_PRODUCTS:
        top_term, bottom_term = -bottom_term, -top_term
    return M + total + 2 * t_a + top_term, m - total - 2 * t_b + bottom_term


def _evaluate_at_eighth_root(p: LaurentPoly) -> Tuple[int, int]:
    """
    在 A = exp(iπ/4) 处求值，返回 |z|^2 = P + Q·√2 中的整数 (P, Q)

    Z[A]/(A^4 + 1) 中的元素 c0 + c1 A + c2 A^2 + c3 A^3。
    """
    c = [0, 0, 0, 0]
    for exponent, coefficient in p.coefficients.items():
        r = exponent % 8
        if r >= 4:
            c[r - 4] -= coefficient
        else:
            c[r] += coefficient
    squares = sum(x * x for x in c)
    cross = c[0] * c[1] + c[1] * c[2] + c[2] * c[3] - c[0] * c[3]
    return squares, cross


def det_via_bracket(d: Diagram, max_n: Optional[int] = None) -> int:
    """
    |<D>(e^{iπ/4})|，即链环行列式

    Raises:
        ResourceLimitError: 交叉数超过上限
        ToleranceError: 舍入误差不小于 1e-6
    """
    squares, cross = _evaluate_at_eighth_root(bracket(d, max_n))
    modulus = math.sqrt(max(squares + cross * math.sqrt(2), 0.0))
    rounded = round(modulus)
    if abs(modulus - rounded) >= ROUNDING_TOLERANCE:
        raise ToleranceError(f"bracket modulus {modulus!r} is not an integer")
    return int(rounded)


__all__ = [
    "BlockShape",
    "ShapeMode",
    "adequate_extremes",
    "bracket",
    "det_via_bracket",
    "extreme_powers",
    "predict_state_circle_deltas",
    "predict_twisted_extremes",
    "state_sum",
    "t_minus",
    "t_plus",
]
