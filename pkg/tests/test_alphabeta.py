import random

import pytest
from hypothesis import given, strategies as st

from ttwitness import (
    Color,
    ContractError,
    Node,
    Window,
    alphabeta_failhard,
    alphabeta_failsoft,
    is_ab_result,
    is_negamax_ab_result,
    is_partial_negamax_ab_result,
    leaf,
    negamax_depth,
    negamax_spec,
    pnm,
    truncate,
)
from ttwitness import tree

from conftest import random_trees, trees

MAX, MIN = Color.MAX, Color.MIN
small = st.integers(-8, 8)


# three independent readings of the approximation predicate


def ab_by_cases(x, e, alpha, beta):
    if alpha < e < beta:
        return x == e
    if e <= alpha:
        # exact value at or below the window: any x in [e, alpha] will do,
        # and when e == alpha also x == e (covered); nothing above alpha
        return e <= x <= alpha or (beta <= x <= e)
    return beta <= x <= e or (e <= x <= alpha)


def ab_by_sets(x, e, alpha, beta):
    ok = set()
    ok |= set(range(e, alpha + 1))
    if alpha < e < beta:
        ok.add(e)
    ok |= set(range(beta, e + 1))
    return x in ok


@given(small, small, small, small)
def test_predicate_readings_agree(x, e, a, b):
    if a >= b:
        a, b = b - 1, a
        if a >= b:
            return
    w = Window(a, b)
    assert is_ab_result(x, e, w) == ab_by_cases(x, e, a, b) == ab_by_sets(x, e, a, b)


def test_is_ab_result_examples():
    assert is_ab_result(4, 4, Window(0, 10))
    assert is_ab_result(3, 1, Window(5, 9))
    assert not is_ab_result(4, 2, Window(0, 10))


def test_window_must_be_strict():
    with pytest.raises(ContractError):
        Window(3, 3)
    with pytest.raises(tree.BoundError):
        Window(0, tree.INFINITY + 1)
    assert Window.full().alpha == -tree.INFINITY + 1


def test_negamax_ab_result_examples():
    u = Node(0, MAX, [leaf(3, MIN), leaf(5, MIN)])
    assert is_negamax_ab_result(5, u, Window(0, 10))
    v = Node(0, MAX, [leaf(-3, MIN)])  # negamax 3
    assert is_negamax_ab_result(4, v, Window(4, 10))


@given(trees(max_depth=3), small, small, small)
def test_negamax_ab_result_is_inline_predicate(u, x, a, b):
    if a >= b:
        return
    e = negamax_spec(u)
    inline = (e <= x <= a) or (a < e == x < b) or (b <= x <= e)
    assert is_negamax_ab_result(x, u, Window(a, b)) == inline


def test_pnm_examples():
    u = Node(0, MAX, [leaf(3, MIN), leaf(5, MIN), leaf(-1, MIN)])
    assert pnm(u, 3) == negamax_spec(u) == 5
    assert pnm(u, 1) == -negamax_spec(u.children[0]) == 3
    with pytest.raises(ContractError):
        pnm(u, 0)
    with pytest.raises(ContractError):
        pnm(u, 4)


@given(trees(max_depth=3), st.data())
def test_pnm_is_negamax_of_child_prefix(u, data):
    if not u.children:
        return
    i = data.draw(st.integers(1, len(u.children)))
    prefix = Node(u.eval, u.color, u.children[:i])
    assert pnm(u, i) == negamax_spec(prefix)
    w = Window(-3, 3)
    assert is_partial_negamax_ab_result(pnm(u, i), u, i, w) == is_negamax_ab_result(pnm(u, i), prefix, w)


def test_failsoft_and_failhard_hand_traces():
    u = Node(0, MAX, [leaf(3, MIN), leaf(9, MIN)])
    w = Window(0, 5)
    # first child gives 3 and raises alpha, second returns 9 >= beta and cuts
    assert alphabeta_failsoft(u, w, 1) == 9
    assert alphabeta_failhard(u, w, 1) == 5
    assert alphabeta_failsoft(u, w, 0) == 0


def _random_window(rng, u, d):
    e = negamax_depth(u, d)
    a = e + rng.randint(-4, 3)
    return Window(a, a + rng.randint(1, 6))


def test_windowed_search_postconditions():
    rng = random.Random(5)
    for u in random_trees(400, seed=21, eval_range=(-6, 6)):
        d = rng.randint(0, u.height + 1)
        w = _random_window(rng, u, d)
        exact = negamax_depth(u, d)
        soft = alphabeta_failsoft(u, w, d)
        hard = alphabeta_failhard(u, w, d)
        assert is_negamax_ab_result(soft, truncate(u, d), w)
        assert is_negamax_ab_result(hard, truncate(u, d), w)
        assert w.alpha <= hard <= w.beta
        if w.alpha < exact < w.beta:
            assert soft == hard == exact
        if soft <= w.alpha:
            assert exact <= soft
        if soft >= w.beta:
            assert exact >= soft


def test_full_window_is_exact():
    for u in random_trees(200, seed=22):
        for d in range(u.height + 2):
            exact = negamax_depth(u, d)
            assert alphabeta_failsoft(u, Window.full(), d) == exact
            assert alphabeta_failhard(u, Window.full(), d) == exact


def test_contract_errors():
    with pytest.raises(ContractError):
        alphabeta_failsoft(Node(0, MAX, [leaf(1, MAX)]), Window(0, 1), 1)
    with pytest.raises(ContractError):
        alphabeta_failhard(leaf(1, MAX), Window(0, 1), -1)
