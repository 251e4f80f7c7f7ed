"""Depth-limited negamax with alpha-beta pruning and a transposition table.

``negamax_ttw`` is the widely published variant whose table lookups only
terminate the search. ``negamax_ttm`` is Marsland's variant, which narrows
the window from stored bounds, propagates fail-soft, classifies against the
current alpha and keeps deeper entries. ``negamax_ttw_hybrid`` grafts the
last three of those changes onto ``negamax_ttw`` one at a time.

Every search takes a table and returns ``(value, new_table)``; the input
table is never modified.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import tree
from .alphabeta import Window, is_ab_result
from .reference import ContractError, _negamax, require_turn_based
from .table import Flag, TableEntry, TranspositionTable
from .tree import Node, ensure_shallow

DEBUG_GUARD = 5_000


@dataclass(frozen=True)
class HybridOptions:
    """Which of Marsland's changes to apply on top of ``negamax_ttw``.

    ``swapped_flag_order`` is a deliberately broken test-only mode: with
    ``current_alpha_flags`` it classifies upper bounds before lower bounds.
    It only bites without ``failsoft_propagation``, since the fail-soft loop
    never raises alpha and so a value cannot be both <= alpha and >= beta.
    """

    failsoft_propagation: bool = False
    current_alpha_flags: bool = False
    depth_preserving_updates: bool = False
    swapped_flag_order: bool = False

    _NAMES = (
        ("failsoft_propagation", "failsoft"),
        ("current_alpha_flags", "current_alpha"),
        ("depth_preserving_updates", "preserve_depth"),
        ("swapped_flag_order", "swapped_order"),
    )

    @property
    def tag(self) -> str:
        return "+".join(short for name, short in self._NAMES if getattr(self, name))

    @classmethod
    def from_tag(cls, tag: str) -> HybridOptions:
        lookup = {short: name for name, short in cls._NAMES}
        parts = [p for p in tag.split("+") if p]
        unknown = [p for p in parts if p not in lookup]
        if unknown:
            raise ValueError(f"unknown hybrid option(s) {unknown}; choose from {sorted(lookup)}")
        return cls(**{lookup[p]: True for p in parts})

    @classmethod
    def all_combinations(cls) -> list[HybridOptions]:
        return [
            cls(bool(i & 1), bool(i & 2), bool(i & 4))
            for i in range(8)
        ]


def _check_call(u: Node, w: Window, depth: int) -> None:
    require_turn_based(u)
    ensure_shallow(u)
    if not isinstance(w, Window):
        raise TypeError("window must be a Window")
    if depth < 0:
        raise ContractError(f"depth must be non-negative, got {depth}")


# --- NegamaxTTW ----------------------------------------------------------


def negamax_ttw(
    u: Node,
    w: Window,
    depth: int,
    table: TranspositionTable | None = None,
    *,
    debug: bool = False,
    guard: int = DEBUG_GUARD,
) -> tuple[int, TranspositionTable]:
    """Search ``u`` to ``depth`` inside ``w``.

    With ``debug=True`` the table is checked for validity on entry and the
    loop invariant of the correctness proof is replayed at every node whose
    expansion count is within ``guard``. Both checks are exponential.
    """
    _check_call(u, w, depth)
    entries = dict(table or {})
    if debug:
        from .witness import is_valid_table

        if not is_valid_table(TranspositionTable(entries), guard):
            raise ContractError("negamax_ttw requires every table entry to be valid")
        value = _ttw(u, w.alpha, w.beta, depth, entries, _InvariantChecker(guard))
    else:
        value = _ttw(u, w.alpha, w.beta, depth, entries, None)
    return value, TranspositionTable(entries)


def _ttw(u, alpha, beta, depth, T, invariant):
    alpha0 = alpha
    t = T.get(u)
    if t is not None and t.depth >= depth:
        if t.flag is Flag.EXACT:
            return t.value
        if t.flag is Flag.LOWERBOUND and t.value >= beta:
            return t.value
        if t.flag is Flag.UPPERBOUND and t.value <= alpha:
            return t.value

    if depth == 0 or not u.children:
        return u.color * u.eval

    value = -tree.INFINITY
    for i, v in enumerate(u.children, start=1):
        value = max(value, -_ttw(v, -beta, -alpha, depth - 1, T, invariant))
        alpha = max(alpha, value)
        if invariant is not None:
            invariant.check(u, depth, i, value, alpha0, beta)
        if alpha >= beta:
            break

    if value <= alpha0:
        T[u] = TableEntry(value, depth, Flag.UPPERBOUND)
    elif value >= beta:
        T[u] = TableEntry(value, depth, Flag.LOWERBOUND)
    else:
        T[u] = TableEntry(value, depth, Flag.EXACT)
    return value


class _InvariantChecker:
    """Replays the loop invariant: after ``i`` children some expansion's
    partial negamax value over those children is approximated by ``value``."""

    def __init__(self, guard: int):
        self.guard = guard

    def check(self, u: Node, depth: int, i: int, value: int, alpha0: int, beta0: int) -> None:
        from .witness import GUARD_EXCEEDED, count_aon_expansions, enumerate_aon_expansions

        if count_aon_expansions(u, depth) > self.guard:
            return
        w = Window(alpha0, beta0)
        for expansion in enumerate_aon_expansions(u, depth, self.guard):
            if expansion is GUARD_EXCEEDED:
                return
            partial = max(-_negamax(c) for c in expansion.children[:i])
            if is_ab_result(value, partial, w):
                return
        raise ContractError(
            f"loop invariant violated after child {i}: value {value} not justified "
            f"by any expansion for window {w}"
        )


# --- NegamaxTTM ----------------------------------------------------------


def negamax_ttm(
    u: Node, w: Window, depth: int, table: TranspositionTable | None = None
) -> tuple[int, TranspositionTable]:
    _check_call(u, w, depth)
    entries = dict(table or {})
    value = _ttm(u, w.alpha, w.beta, depth, entries)
    return value, TranspositionTable(entries)


def _ttm(u, alpha, beta, depth, T):
    t = T.get(u)
    if t is not None and t.depth >= depth:
        if t.flag is Flag.EXACT:
            return t.value
        if t.flag is Flag.LOWERBOUND:
            alpha = max(alpha, t.value)
        elif t.flag is Flag.UPPERBOUND:
            beta = min(beta, t.value)
        if alpha >= beta:
            return t.value

    if depth == 0 or not u.children:
        return u.color * u.eval

    value = -tree.INFINITY
    for v in u.children:
        value = max(value, -_ttm(v, -beta, -max(alpha, value), depth - 1, T))
        if value >= beta:
            break

    flag = Flag.EXACT
    if value <= alpha:
        flag = Flag.UPPERBOUND
    if value >= beta:
        flag = Flag.LOWERBOUND

    old = T.get(u)
    if old is None or old.depth <= depth:
        T[u] = TableEntry(value, depth, flag)
    return value


# --- hybrids -------------------------------------------------------------


def negamax_ttw_hybrid(
    u: Node,
    w: Window,
    depth: int,
    table: TranspositionTable | None = None,
    opts: HybridOptions = HybridOptions(),
) -> tuple[int, TranspositionTable]:
    _check_call(u, w, depth)
    entries = dict(table or {})
    value = _hybrid(u, w.alpha, w.beta, depth, entries, opts)
    return value, TranspositionTable(entries)


def _hybrid(u, alpha, beta, depth, T, opts):
    alpha0 = alpha
    t = T.get(u)
    if t is not None and t.depth >= depth:
        if t.flag is Flag.EXACT:
            return t.value
        if t.flag is Flag.LOWERBOUND and t.value >= beta:
            return t.value
        if t.flag is Flag.UPPERBOUND and t.value <= alpha:
            return t.value

    if depth == 0 or not u.children:
        return u.color * u.eval

    value = -tree.INFINITY
    if opts.failsoft_propagation:
        for v in u.children:
            value = max(value, -_hybrid(v, -beta, -max(alpha, value), depth - 1, T, opts))
            if value >= beta:
                break
    else:
        for v in u.children:
            value = max(value, -_hybrid(v, -beta, -alpha, depth - 1, T, opts))
            alpha = max(alpha, value)
            if alpha >= beta:
                break

    if not opts.current_alpha_flags:
        if value <= alpha0:
            flag = Flag.UPPERBOUND
        elif value >= beta:
            flag = Flag.LOWERBOUND
        else:
            flag = Flag.EXACT
    elif opts.swapped_flag_order:
        if value <= alpha:
            flag = Flag.UPPERBOUND
        elif value >= beta:
            flag = Flag.LOWERBOUND
        else:
            flag = Flag.EXACT
    else:
        # value <= alpha can hold together with value >= beta here, so the
        # lower bound case has to win
        if value >= beta:
            flag = Flag.LOWERBOUND
        elif value <= alpha:
            flag = Flag.UPPERBOUND
        else:
            flag = Flag.EXACT

    old = T.get(u)
    if not opts.depth_preserving_updates or old is None or old.depth <= depth:
        T[u] = TableEntry(value, depth, flag)
    return value
