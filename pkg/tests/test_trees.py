import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from semicalc.trees import (
    LEAF,
    Caret,
    brute_force_range,
    caret_count,
    elementary_moves,
    enumerate_shapes,
    is_blocking,
    is_sufficiently_expanded,
    leaf_words,
    parse_tree,
    random_tree,
    root_label_range,
    set_root_label,
    split_point,
    tree_partition,
    trees_equivalent,
)

F = Fraction
T = parse_tree

FIG1_LEFT = T("(0 (1 (-1 . .) .) .)")
FIG1_RIGHT = T("(2 (1 . (3 . .)) (-1 . .))")
FIG4_LEFT = T("(2 (4 (0 (-1 . .) (3 . .)) .) .)")
# the printed right tree carries shifted labels; this is the tree the
# down move at the left child really produces
FIG4_RIGHT = T("(2 (3 (0 . .) (0 (2 . .) .)) .)")


def test_parse_and_print_round_trip():
    assert T("(0 . .)") == Caret(0, LEAF, LEAF)
    text = "(2 (4 (0 . .) .) .)"
    assert str(T(text)) == text and caret_count(T(text)) == 3
    assert str(T("  ( 2 (4 (0 . .) .)   . ) ")) == text
    for bad in ("(0 .)", "(x . .)", "(0 . .", "(0 . .))"):
        with pytest.raises(ValueError):
            T(bad)


def test_leaf_words():
    assert leaf_words(T("(0 . .)")) == ["A", "B"]
    assert leaf_words(FIG1_LEFT) == ["ACAcA", "ACAcB", "ACB", "B"]
    assert leaf_words(FIG1_RIGHT) == ["CCACA", "CCACBCCCA", "CCACBCCCB",
                                      "CCBcA", "CCBcB"]


def test_tree_partition():
    assert tree_partition(LEAF, 2) == [(0, 1)]
    assert tree_partition(T("(2 . .)"), 2) == [(0, F(4, 5)), (F(4, 5), 1)]
    assert tree_partition(T("(0 (0 . .) .)"), 2) == [
        (0, F(1, 3)), (F(1, 3), F(1, 2)), (F(1, 2), 1)]


def test_split_point():
    assert split_point(0, 2) == F(1, 2)
    assert split_point(-2, 3) == F(1, 10)


def test_equivalence():
    assert trees_equivalent(FIG4_LEFT, FIG4_RIGHT, 2)
    assert not trees_equivalent(T("(0 . .)"), T("(1 . .)"), 2)
    assert trees_equivalent(FIG1_LEFT, FIG1_LEFT, 3)


def test_elementary_moves():
    assert ("L", "down", FIG4_RIGHT) in elementary_moves(FIG4_LEFT, 2)
    assert elementary_moves(T("(0 . .)"), 2) == []
    # Caret(k, Ta, Caret(0, Tb, Tc)) -> Caret(k+1, Caret(0, Ta-1, Tb+1), Tc-1)
    t = T("(5 (2 . .) (0 (-1 . .) (7 . .)))")
    up = [new for path, kind, new in elementary_moves(t, 2)
          if path == "" and kind == "up"]
    assert up == [T("(6 (0 (1 . .) (0 . .)) (6 . .))")]


def test_variant_three_move():
    t = T("(1 (5 . .) (0 (0 (2 . .) (3 . .)) (0 (4 . .) (6 . .))))")
    up = [new for path, kind, new in elementary_moves(t, 3)
          if path == "" and kind == "up"]
    assert up == [T("(2 (0 (0 (4 . .) (3 . .)) (0 (2 . .) (5 . .))) (5 . .))")]
    assert trees_equivalent(t, up[0], 3)


def test_blocking():
    assert not is_blocking(T("(0 (0 . .) (0 . .))"))
    assert is_blocking(T("(1 (0 . .) (0 . .))"))
    assert is_blocking(T("(0 . .)"))


def test_sufficiently_expanded():
    single = T("(0 . .)")
    assert is_sufficiently_expanded(single, "left", 2)
    assert is_sufficiently_expanded(single, "right", 2)
    assert not is_sufficiently_expanded(T("(1 (0 . .) .)"), "left", 2)
    assert is_sufficiently_expanded(T("(1 (2 . .) .)"), "left", 2)


def test_set_root_label():
    for k in (-2, 0, 3):
        t = Caret(k, T("(0 . .)"), LEAF)
        assert set_root_label(t, k - 1, 2) == Caret(k - 1, LEAF, T("(0 . .)"))
        assert set_root_label(t, k, 2) == t
    assert set_root_label(T("(0 . .)"), 1, 2) is None


def test_root_label_range():
    assert root_label_range(T("(0 . .)"), 2) == (0, 0)
    for k in (-1, 0, 2):
        assert root_label_range(Caret(k, T("(0 . .)"), LEAF), 2) == (k - 1, k)
    assert root_label_range(T("(0 (0 . .) .)"), 2) == (-1, 0)
    with pytest.raises(ValueError):
        root_label_range(LEAF, 2)


def test_brute_force_examples():
    assert brute_force_range(T("(0 . .)"), 2, bound=3) == {0}
    fig4 = brute_force_range(FIG4_LEFT, 2, bound=6)
    assert 2 in fig4
    assert fig4 == set(range(min(fig4), max(fig4) + 1))


def test_brute_force_monotone_in_bound():
    t = T("(1 (0 . .) (0 . .))")
    for n in (2, 3):
        small = brute_force_range(t, n, bound=2)
        assert small <= brute_force_range(t, n, bound=3)


def test_enumerate_shapes_catalan():
    assert [sum(1 for _ in enumerate_shapes(c)) for c in range(6)] == [1, 1, 2, 5, 14, 42]


trees = st.builds(lambda seed, n: (random_tree(random.Random(seed), 6, -3, 3), n),
                  st.integers(0, 10**9), st.sampled_from([2, 3]))


@settings(max_examples=150)
@given(trees)
def test_moves_preserve_the_partition(tree_and_n):
    t, n = tree_and_n
    for _, _, new in elementary_moves(t, n):
        assert tree_partition(new, n) == tree_partition(t, n)


@settings(max_examples=150)
@given(trees)
def test_up_and_down_moves_are_inverse(tree_and_n):
    t, n = tree_and_n
    for path, kind, new in elementary_moves(t, n):
        back = "down" if kind == "up" else "up"
        assert (path, back, t) in elementary_moves(new, n)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([2, 3]))
def test_root_label_range_matches_brute_force(seed, n):
    t = random_tree(random.Random(seed), 4, -2, 2)
    if t is LEAF:
        return
    lo, hi = root_label_range(t, n)
    assert brute_force_range(t, n) == set(range(lo, hi + 1))
    for k in range(lo, hi + 1):
        assert trees_equivalent(set_root_label(t, k, n), t, n)
