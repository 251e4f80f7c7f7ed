import pytest
from hypothesis import given, strategies as st

from ttwitness import (
    Color,
    Node,
    NotTurnBasedError,
    leaf,
    minimax_alg,
    minimax_depth,
    minimax_spec,
    negamax_alg,
    negamax_depth,
    negamax_spec,
    truncate,
)

from conftest import random_trees, trees

MAX, MIN = Color.MAX, Color.MIN


def test_minimax_examples():
    assert minimax_spec(leaf(7, MIN)) == 7
    assert minimax_spec(Node(0, MAX, [leaf(3, MIN), leaf(5, MIN)])) == 5
    assert minimax_spec(Node(0, MIN, [leaf(3, MAX), leaf(5, MAX)])) == 3
    assert minimax_alg(leaf(7, MAX)) == 7
    assert minimax_alg(Node(0, MIN, [leaf(3, MAX), leaf(5, MAX)])) == 3


def test_minimax_allows_consecutive_moves():
    u = Node(0, MAX, [Node(0, MAX, [leaf(1, MIN), leaf(9, MIN)]), leaf(4, MAX)])
    assert minimax_spec(u) == minimax_alg(u) == 9


def test_negamax_examples():
    assert negamax_spec(leaf(7, MIN)) == -7
    assert negamax_spec(Node(0, MAX, [leaf(3, MIN), leaf(5, MIN)])) == 5
    assert negamax_alg(leaf(7, MAX)) == 7
    assert negamax_alg(leaf(7, MIN)) == -7


def test_negamax_rejects_non_turn_based():
    u = Node(0, MAX, [leaf(1, MAX)])
    for f in (negamax_spec, negamax_alg):
        with pytest.raises(NotTurnBasedError):
            f(u)
    with pytest.raises(NotTurnBasedError):
        negamax_depth(u, 1)


def test_internal_eval_ignored_without_truncation():
    u = Node(100, MAX, [leaf(3, MIN)])
    assert negamax_spec(u) == -(-3)
    assert negamax_depth(u, 0) == 100


def test_negamax_depth_zero_is_root_eval():
    for u in random_trees(50, seed=3):
        assert negamax_depth(u, 0) == u.color * u.eval


def test_sign_identity_on_random_trees():
    for u in random_trees(300, seed=11):
        assert negamax_spec(u) == u.color * minimax_spec(u)


def test_loop_forms_match_definitions():
    for u in random_trees(300, seed=12, turn_based=False):
        assert minimax_alg(u) == minimax_spec(u)
    for u in random_trees(300, seed=13):
        assert negamax_alg(u) == negamax_spec(u)


@given(trees(max_depth=4), st.integers(0, 6))
def test_depth_limited_composition(u, d):
    assert minimax_depth(u, d) == minimax_spec(truncate(u, d))
    assert negamax_depth(u, d) == negamax_spec(truncate(u, d))
    if d >= u.height:
        assert minimax_depth(u, d) == minimax_spec(u)
        assert negamax_depth(u, d) == negamax_spec(u)
