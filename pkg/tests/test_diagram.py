"""PD 代码解析、光滑化与充分性"""

import pytest

from src.core.diagram import (
    all_A,
    all_B,
    canonical_key,
    faces,
    is_A_adequate,
    is_adequate,
    is_B_adequate,
    is_split,
    iter_states,
    mirror,
    parse_pd,
    resolve,
    same_up_to_relabeling,
    serialize,
    state_circle_count,
    validate,
)
from src.core.errors import DiagramError

TREFOIL_PD = "X 4 2 5 1\nX 6 4 1 3\nX 2 6 3 5\n"


def test_parse_trefoil(trefoil):
    assert trefoil.n == 3
    assert trefoil.arc_count == 6
    assert trefoil.writhe == 3
    assert [c.id for c in trefoil.crossings] == [1, 2, 3]
    assert all(c.sign == 1 for c in trefoil.crossings)
    assert len(trefoil.components) == 1
    assert sorted(trefoil.components[0]) == list(range(1, 7))


def test_parse_accepts_comments_and_slashes():
    d = parse_pd("# right trefoil\nname t\nX 4 2 5 1 / X 6 4 1 3\nX 2 6 3 5  # last\n")
    assert d.name == "t"
    assert d.n == 3


def test_serialize_round_trip(trefoil, figure_eight, knot_10_152):
    for d in (trefoil, figure_eight, knot_10_152):
        assert parse_pd(serialize(d)) == d


def test_unknot_has_one_free_loop(unknot):
    assert unknot.n == 0
    assert unknot.free_loops == 1
    assert not is_split(unknot)
    assert len(faces(unknot)) == 2


@pytest.mark.parametrize("text", [
    "X 1 2 3",
    "X 1 2 3 4\n",
    "Y 1 2 3 4\n",
    "loops x\n",
])
def test_malformed_pd_is_rejected(text):
    with pytest.raises(DiagramError):
        parse_pd(text)


def test_split_diagram_is_rejected():
    with pytest.raises(DiagramError):
        parse_pd("loops 2\n")


def test_arc_multiplicity_violations_are_listed():
    with pytest.raises(DiagramError) as info:
        parse_pd("X 1 2 3 4\nX 1 2 3 5\n")
    kinds = {v.kind for v in info.value.violations}
    assert kinds == {"arc multiplicity"}


def test_non_planar_rotation_is_a_planarity_violation():
    with pytest.raises(DiagramError) as info:
        parse_pd("X 2 3 4 1\nX 4 1 3 2\n")
    assert [v.kind for v in info.value.violations] == ["planarity"]
    assert "Euler defect" in str(info.value)


def test_catalog_diagrams_validate(catalog):
    for d in catalog.load_all():
        assert validate(d) == []


def test_face_count_is_n_plus_two(catalog):
    for d in catalog.load_all():
        assert len(faces(d)) == d.n + 2


def test_mirror_is_an_involution(trefoil, figure_eight):
    for d in (trefoil, figure_eight):
        m = mirror(d)
        assert m.writhe == -d.writhe
        assert mirror(m) == d


def test_mirror_of_right_trefoil_matches_left(trefoil, trefoil_left):
    assert same_up_to_relabeling(mirror(trefoil), trefoil_left)


def test_state_circle_counts(trefoil, figure_eight):
    assert state_circle_count(trefoil, all_A(trefoil)) == 2
    assert state_circle_count(trefoil, all_B(trefoil)) == 3
    assert state_circle_count(figure_eight, all_A(figure_eight)) == 3
    assert state_circle_count(figure_eight, all_B(figure_eight)) == 3


def test_partial_state_is_rejected(trefoil):
    state = all_A(trefoil)
    partial = type(state)({1: 1})
    with pytest.raises(DiagramError):
        resolve(trefoil, partial)


def test_iter_states_enumerates_every_state(figure_eight):
    states = list(iter_states(figure_eight))
    assert len(states) == 16
    assert states[0].sigma == 4
    assert states[-1].sigma == -4
    assert len({tuple(sorted(s.assignment.items())) for s in states}) == 16


def test_adequacy_of_catalog(catalog):
    for name in ("trefoil", "trefoil-left", "figure-eight", "10_152", "pretzel-2-2-m2-m2"):
        assert is_adequate(catalog.load(name)), name


def test_adequacy_matches_single_flip_enumeration(catalog):
    """A 充分当且仅当 σ = n - 2 的每个状态都比全 A 状态少一个圆周（B 同理）"""
    for d in catalog.load_all():
        if d.n == 0 or d.n > 12:
            continue
        s_a = state_circle_count(d, all_A(d))
        s_b = state_circle_count(d, all_B(d))
        flips_a = [state_circle_count(d, all_A(d).flipped(c.id)) for c in d.crossings]
        flips_b = [state_circle_count(d, all_B(d).flipped(c.id)) for c in d.crossings]
        assert is_A_adequate(d) == all(k < s_a for k in flips_a), d.name
        assert is_B_adequate(d) == all(k < s_b for k in flips_b), d.name


def test_kink_is_not_adequate():
    # 一个交叉的平凡纽结
    d = parse_pd("X 1 1 2 2\n")
    assert d.n == 1
    assert not is_adequate(d)


def test_relabeling_and_reordering(trefoil):
    reordered = parse_pd("X 2 6 3 5\nX 4 2 5 1\nX 6 4 1 3\n")
    assert same_up_to_relabeling(trefoil, reordered)
    assert canonical_key(trefoil) == canonical_key(reordered)


def test_distinct_diagrams_are_not_relabelings(trefoil, trefoil_left, figure_eight):
    assert not same_up_to_relabeling(trefoil, trefoil_left)
    assert not same_up_to_relabeling(trefoil, figure_eight)


def test_parse_normalizes_labels():
    shifted = parse_pd("X 5 3 6 2\nX 1 5 2 4\nX 3 1 4 6\n")
    assert same_up_to_relabeling(shifted, parse_pd(TREFOIL_PD))
