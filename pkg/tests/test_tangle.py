"""连分数、块语法、延拓与渲染"""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from src.core.bracket import ShapeMode, predict_twisted_extremes
from src.core.determinant import determinant
from src.core.errors import GrammarError, ShapeError, SingularContinuedFractionError, TangleError
from src.core.tangle import (
    BlockKind,
    BlockPattern,
    ContinuedFraction,
    OrientedCrossingContext,
    TangleBlock,
    block_crossing_count,
    block_shape,
    block_state_circle_deltas,
    close_numerator,
    collapse_last,
    continued_fraction,
    conway_fraction,
    extends,
    negate,
    negate_block,
    orientation_extends,
    orientation_failure,
    parse_block,
    predict_block_extremes,
    print_block,
    render,
    slope,
)
from src.core.twist import random_extending_block

positive_cfs = st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=4).map(
    lambda xs: ContinuedFraction(tuple(xs)))

nonzero = st.integers(min_value=-5, max_value=5).filter(lambda a: a != 0)
any_cfs = st.lists(nonzero, min_size=1, max_size=4).map(lambda xs: ContinuedFraction(tuple(xs)))


@st.composite
def blocks(draw, depth=2):
    if depth == 0 or draw(st.booleans()):
        return TangleBlock(BlockKind.LEAF, cf=draw(any_cfs))
    children = draw(st.lists(blocks(depth=depth - 1), min_size=1, max_size=3))
    return TangleBlock.sum(*children) if draw(st.booleans()) else TangleBlock.product(*children)


class TestContinuedFraction:
    def test_rejects_empty_and_zero(self):
        with pytest.raises(TangleError):
            ContinuedFraction(())
        with pytest.raises(TangleError):
            ContinuedFraction.of(2, 0)

    def test_sign(self):
        assert ContinuedFraction.of(2, 3).sign == 1
        assert ContinuedFraction.of(-2, -3).sign == -1
        assert ContinuedFraction.of(2, -3).sign == 0

    @pytest.mark.parametrize("denominators, expected", [
        ((2,), Fraction(1, 2)),
        ((1,), Fraction(1)),
        ((2, 3), Fraction(3, 7)),
        ((2, 2, 1), Fraction(3, 7)),
        ((3, 1), Fraction(1, 4)),
        ((2, -2), Fraction(2, 3)),
    ])
    def test_slope(self, denominators, expected):
        assert slope(ContinuedFraction(denominators)) == expected

    def test_singular(self):
        with pytest.raises(SingularContinuedFractionError):
            slope(ContinuedFraction.of(1, -1))

    def test_conway_fraction_is_the_reciprocal(self):
        assert conway_fraction(ContinuedFraction.of(2, 3)) == Fraction(7, 3)

    def test_negate(self):
        cf = ContinuedFraction.of(2, 3)
        assert negate(cf) == ContinuedFraction.of(-2, -3)
        assert slope(negate(cf)) == Fraction(-3, 7)

    def test_collapse_last(self):
        assert collapse_last(ContinuedFraction.of(2, 2, 1)) == ContinuedFraction.of(2, 3)
        assert collapse_last(ContinuedFraction.of(3, 1)) == ContinuedFraction.of(4)
        assert collapse_last(ContinuedFraction.of(-3, -1)) == ContinuedFraction.of(-4)

    @pytest.mark.parametrize("denominators", [(1,), (2, 3), (1, -1)])
    def test_collapse_last_errors(self, denominators):
        with pytest.raises(TangleError):
            collapse_last(ContinuedFraction(denominators))

    def test_continued_fraction_of_slope(self):
        assert continued_fraction(3, 7) == ContinuedFraction.of(2, 3)
        assert continued_fraction(-3, 7) == ContinuedFraction.of(-2, -3)
        with pytest.raises(TangleError):
            continued_fraction(7, 3)

    @pytest.mark.property_based
    @given(positive_cfs)
    @settings(max_examples=100)
    def test_slope_is_reduced(self, cf):
        """同号连分数的斜率总有定义，且分母为正"""
        s = slope(cf)
        assert s.denominator >= 1
        assert 0 < s <= 1

    @pytest.mark.property_based
    @given(any_cfs)
    @settings(max_examples=100)
    def test_negate_flips_the_slope(self, cf):
        """取反是对合，斜率变号"""
        assert negate(negate(cf)) == cf
        try:
            s = slope(cf)
        except SingularContinuedFractionError:
            return
        assert slope(negate(cf)) == -s

    @pytest.mark.property_based
    @given(positive_cfs, st.sampled_from((1, -1)))
    @settings(max_examples=100)
    def test_collapse_last_keeps_the_slope(self, cf, sign):
        """[..., a, ±1] 与 [..., a ± 1] 斜率相同"""
        signed = ContinuedFraction(tuple(sign * a for a in cf.denominators) + (sign,))
        assert slope(collapse_last(signed)) == slope(signed)

    @pytest.mark.property_based
    @given(positive_cfs)
    @settings(max_examples=100)
    def test_expansion_round_trip(self, cf):
        """末项大于 1 的正连分数由其斜率唯一确定"""
        assume(cf.denominators[-1] > 1 or len(cf) == 1)
        s = slope(cf)
        assert continued_fraction(s.numerator, s.denominator) == cf


class TestGrammar:
    @pytest.mark.parametrize("text", [
        "[1]",
        "[2,-3]",
        "S([2],[1,1])",
        "P(S([2],[3]),S([1,1]))",
        "S(P([2]),P([3],[4]))",
    ])
    def test_round_trip(self, text):
        assert print_block(parse_block(text)) == text

    def test_whitespace_is_ignored(self):
        assert parse_block(" S ( [2 , 1] ,\n P([1], [1]) ) ") == parse_block("S([2,1],P([1],[1]))")

    @pytest.mark.parametrize("text", ["", "[", "[]", "[0]", "[1,]", "S()", "Q([1])", "[1] [2]", "[a]"])
    def test_grammar_errors(self, text):
        with pytest.raises(GrammarError):
            parse_block(text)

    @pytest.mark.property_based
    @given(blocks())
    @settings(max_examples=100)
    def test_print_parse_round_trip(self, b):
        """打印后再解析得到同一个块"""
        assert parse_block(print_block(b)) == b

    def test_pattern(self):
        pattern = BlockPattern("S([?],[1])")
        assert pattern.instantiate(3) == parse_block("S([3],[1])")

    @pytest.mark.parametrize("text", ["[1]", "[?,?]"])
    def test_pattern_needs_one_hole(self, text):
        with pytest.raises(GrammarError):
            BlockPattern(text)


class TestExtension:
    def test_extends(self):
        assert extends(parse_block("[3,2]"), 1)
        assert not extends(parse_block("[-3]"), 1)
        b = parse_block("S([2],[1,1])")
        assert extends(b, 1)
        assert not extends(b, -1)
        assert not extends(parse_block("[2,-1]"), 1)

    @pytest.mark.property_based
    @given(blocks(), st.sampled_from((1, -1)))
    @settings(max_examples=100)
    def test_extension_under_negation(self, b, sign):
        """b 延拓 s 当且仅当取反后的块延拓 -s"""
        assert extends(b, sign) == extends(negate_block(b), -sign)

    def test_crossing_count(self):
        assert block_crossing_count(parse_block("[3]")) == 3
        assert block_crossing_count(parse_block("S([2],[1,1])")) == 4
        assert block_crossing_count(parse_block("P(S([2],[1]),[1,1,1])")) == 6

    def test_orientation(self):
        leaf = parse_block("[3]")
        assert orientation_extends(leaf, OrientedCrossingContext(1, (1, 1, 1), (1, 1, 1)))
        negative = parse_block("[-3]")
        assert not orientation_extends(negative, OrientedCrossingContext(-1, (1, 1, 1), (1, 1, 1)))
        assert orientation_failure(leaf, OrientedCrossingContext(1, (1, 1, 1), None)) == "no orientation extends"
        assert orientation_failure(negative, OrientedCrossingContext(1, (1, 1, 1), None)) == \
            "block does not extend the crossing"

    def test_even_boxes_take_the_opposite_type(self):
        cf = parse_block("[1,1]")
        assert orientation_extends(cf, OrientedCrossingContext(1, (1, 2), (1, 1)))
        assert not orientation_extends(cf, OrientedCrossingContext(1, (1, 2), (1, -1)))


class TestRender:
    def test_single_crossing(self):
        fragment = render(parse_block("[1]"))
        assert len(fragment.crossings) == 1
        assert sorted(fragment.endpoints.values()) == [1, 2, 3, 4]

    def test_twist_region(self):
        fragment = render(parse_block("[4]"))
        assert len(fragment.crossings) == 4
        assert {c.box for c in fragment.crossings} == {1}
        assert fragment.label_count == 2 * 4 + 2

    def test_boxes_and_signs(self):
        fragment = render(parse_block("[2,-3]"))
        assert [c.box for c in fragment.crossings] == [1, 1, 2, 2, 2]
        assert [c.picture_sign for c in fragment.crossings] == [1, 1, -1, -1, -1]

    def test_endpoints_are_attached(self):
        fragment = render(parse_block("P(S([2],[1]),[1,1,1])"))
        for end in ("NW", "NE", "SW", "SE"):
            i, p = fragment.endpoint_dart(end)
            assert fragment.crossings[i].arcs[p] == fragment.endpoints[end]

    def test_closure_determinant_of_two_three(self):
        assert determinant(close_numerator(render(parse_block("[2,3]")))) == 7

    @pytest.mark.property_based
    @given(positive_cfs.filter(lambda cf: cf.crossing_count <= 8))
    @settings(max_examples=30, deadline=None)
    def test_closure_determinant_is_the_slope_denominator(self, cf):
        """有理缠结分子闭包的行列式等于斜率的分母"""
        d = close_numerator(render(TangleBlock(BlockKind.LEAF, cf=cf)))
        assert d.n == cf.crossing_count
        assert determinant(d) == slope(cf).denominator


class TestShape:
    def test_single_leaf(self):
        shape = block_shape(parse_block("[2,1]"))
        assert (shape.l, shape.k, shape.cf) == (1, (1,), (((2, 1),),))

    def test_product_of_sums(self):
        shape = block_shape(parse_block("P(S([2],[3]),S([1,1]))"))
        assert shape.mode is ShapeMode.PRODUCT_OF_SUMS
        assert (shape.l, shape.k) == (2, (2, 1))

    def test_sum_of_products(self):
        shape = block_shape(parse_block("S(P([2]),P([3],[4]))"))
        assert shape.mode is ShapeMode.SUM_OF_PRODUCTS
        assert (shape.l, shape.k) == (2, (1, 2))

    def test_negative_blocks_use_absolute_values(self):
        shape = block_shape(parse_block("P([-2],[-1,-1])"))
        assert shape.cf == (((2,),), ((1, 1),))

    @pytest.mark.parametrize("text", ["P(S(P([1],[1]),[1]),[1])", "S([1],[-1])"])
    def test_uncovered_shapes(self, text):
        with pytest.raises(ShapeError):
            block_shape(parse_block(text))

    def test_nested_deltas(self):
        assert block_state_circle_deltas(parse_block("[1]")) == (0, 0)
        assert block_state_circle_deltas(parse_block("S([1],[1],[1])")) == (2, 0)
        assert block_state_circle_deltas(parse_block("P([1],[1],[1])")) == (0, 2)

    @pytest.mark.property_based
    @given(st.integers(min_value=0, max_value=2 ** 32), st.integers(min_value=1, max_value=8))
    @settings(max_examples=100)
    def test_nested_prediction_agrees_on_two_level_blocks(self, seed, budget):
        """两层块上，一般嵌套的增量公式与两层参数化的公式一致"""
        b = random_extending_block(seed, 1, budget)
        assert predict_block_extremes(5, -7, b) == predict_twisted_extremes(5, -7, block_shape(b))
