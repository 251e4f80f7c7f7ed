import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ttwitness import (
    GUARD_EXCEEDED,
    Color,
    Flag,
    Node,
    TableEntry,
    TranspositionTable,
    Window,
    check_negamax_tt_result,
    check_valid_table,
    check_valid_table_entry,
    count_aon_expansions,
    enumerate_aon_expansions,
    is_aon_expansion,
    leaf,
    negamax_spec,
    serialize,
    truncate,
    witness_value_set,
)
from ttwitness.witness import GuardExceededError, expansion_values

from conftest import random_trees, trees

MAX, MIN = Color.MAX, Color.MIN


# brute-force oracle: pick a subset of the cut points at or beyond the horizon


def _cut_points(u, d, path=()):
    out = []
    if u.children and len(path) >= d:
        out.append(path)
    for i, c in enumerate(u.children):
        out.extend(_cut_points(c, d, path + (i,)))
    return out


def _cut(u, cuts, path=()):
    if path in cuts:
        return Node(u.eval, u.color, ())
    return Node(u.eval, u.color, [_cut(c, cuts, path + (i,)) for i, c in enumerate(u.children)])


def oracle_expansions(u, d):
    points = _cut_points(u, d)
    assert len(points) <= 14, "oracle tree too large"
    seen = set()
    for mask in itertools.product((False, True), repeat=len(points)):
        cuts = {p for p, m in zip(points, mask) if m}
        seen.add(serialize(_cut(u, cuts)))
    return seen


def small_trees():
    return trees(max_depth=3, max_children=3, evals=st.integers(-4, 4))


@settings(max_examples=200)
@given(small_trees(), st.integers(0, 4))
def test_enumeration_matches_oracle(u, d):
    if len(_cut_points(u, d)) > 14:
        return
    produced = [serialize(x) for x in enumerate_aon_expansions(u, d)]
    assert len(produced) == len(set(produced))
    assert set(produced) == oracle_expansions(u, d)
    assert len(produced) == count_aon_expansions(u, d)


@settings(max_examples=200)
@given(small_trees(), st.integers(0, 4))
def test_every_enumerated_tree_is_an_expansion(u, d):
    for x in enumerate_aon_expansions(u, d):
        assert is_aon_expansion(x, u, d)


def test_expansion_examples():
    u = Node(0, MAX, [Node(1, MIN, [leaf(5, MAX)]), leaf(2, MIN)])
    assert count_aon_expansions(u, 0) == 3
    assert count_aon_expansions(u, 1) == 2
    assert count_aon_expansions(u, 2) == 1
    assert list(enumerate_aon_expansions(u, 2)) == [u]
    first = next(iter(enumerate_aon_expansions(u, 0)))
    assert first == leaf(0, MAX)
    assert witness_value_set(leaf(3, MIN), 0) == {-3}


def test_is_aon_expansion_rejects_partial_children():
    u = Node(0, MAX, [leaf(1, MIN), leaf(2, MIN)])
    assert is_aon_expansion(leaf(0, MAX), u, 0)
    assert not is_aon_expansion(leaf(0, MAX), u, 1)
    assert not is_aon_expansion(Node(0, MAX, [leaf(1, MIN)]), u, 0)
    assert not is_aon_expansion(leaf(1, MAX), u, 0)


def test_guard_sentinel():
    u = Node(0, MAX, [Node(0, MIN, [leaf(i, MAX)]) for i in range(6)])
    assert count_aon_expansions(u, 1) == 64
    items = list(enumerate_aon_expansions(u, 1, guard=10))
    assert len(items) == 11 and items[-1] is GUARD_EXCEEDED
    with pytest.raises(ValueError):
        list(enumerate_aon_expansions(u, 1, guard=0))
    with pytest.raises(GuardExceededError):
        witness_value_set(u, 1, guard=10)


def test_unknown_verdict_when_guard_hit():
    u = Node(0, MAX, [Node(0, MIN, [leaf(i, MAX)]) for i in range(6)])
    report = check_negamax_tt_result(100, u, Window(-1, 1), 1, guard=10)
    assert report.verdict == "unknown" and not report.exhausted
    assert check_negamax_tt_result(100, u, Window(-1, 1), 1, strategy="values").verdict == "refuted"


@settings(max_examples=200)
@given(small_trees(), st.integers(0, 4))
def test_value_set_strategies_agree(u, d):
    enumerated = witness_value_set(u, d)
    assert witness_value_set(u, d, strategy="values") == enumerated
    for value, witness in expansion_values(u, d).items():
        assert is_aon_expansion(witness, u, d)
        assert negamax_spec(witness) == value


@settings(max_examples=200)
@given(small_trees(), st.integers(0, 4))
def test_extreme_expansions_belong(u, d):
    values = witness_value_set(u, d)
    assert negamax_spec(truncate(u, d)) in values
    assert negamax_spec(u) in values
    if d >= u.height:
        assert values == {negamax_spec(u)}


def test_shared_subtree_value_set(shared_subtree_case):
    _, v = shared_subtree_case
    assert witness_value_set(v, 2) == {1, 4}
    assert count_aon_expansions(v, 2) == 2
    assert 2 not in witness_value_set(v, 2)


def test_check_reports_witness():
    u = Node(0, MAX, [leaf(3, MIN), leaf(5, MIN)])
    report = check_negamax_tt_result(5, u, Window.full(), 1)
    assert report.verdict == "satisfied" and report.witness == u
    assert check_negamax_tt_result(4, u, Window.full(), 1).verdict == "refuted"
    assert check_negamax_tt_result(7, u, Window(0, 5), 1).verdict == "refuted"
    assert check_negamax_tt_result(6, u, Window(0, 6), 1).verdict == "refuted"
    assert check_negamax_tt_result(4, u, Window(0, 4), 1).satisfied
    assert check_negamax_tt_result(5, u, Window(0, 4), 1).satisfied


def test_entry_checks():
    u = Node(0, MAX, [Node(9, MIN, [leaf(-2, MAX)]), leaf(-1, MIN)])
    # cutting the first child leaves it worth -9, so the root gets 9;
    # expanding it gives 2 and the root settles for the second child's -1
    assert witness_value_set(u, 1) == {9, -1}
    cases = [
        (TableEntry(9, 1, Flag.EXACT), True),
        (TableEntry(3, 1, Flag.EXACT), False),
        (TableEntry(-1, 1, Flag.UPPERBOUND), True),
        (TableEntry(-2, 1, Flag.UPPERBOUND), False),
        (TableEntry(9, 1, Flag.LOWERBOUND), True),
        (TableEntry(10, 1, Flag.LOWERBOUND), False),
    ]
    for entry, ok in cases:
        assert check_valid_table_entry(entry, u).satisfied == ok
        assert check_valid_table_entry(entry, u, strategy="values").satisfied == ok
    table = TranspositionTable({u: TableEntry(10, 1, Flag.LOWERBOUND), leaf(4, MAX): TableEntry(4, 0, Flag.EXACT)})
    verdicts = {k: r.verdict for k, r in check_valid_table(table).items()}
    assert verdicts == {u: "refuted", leaf(4, MAX): "satisfied"}


def test_witness_machinery_on_generator_trees():
    for u in random_trees(150, seed=41, max_depth=4, eval_range=(-5, 5), duplicate_probability=0.4):
        for d in range(u.height + 1):
            if count_aon_expansions(u, d) > 2000:
                continue
            items = list(enumerate_aon_expansions(u, d))
            assert len(items) == count_aon_expansions(u, d)
            assert truncate(u, d) in items and u in items
