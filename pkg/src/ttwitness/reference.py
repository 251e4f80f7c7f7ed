"""Reference minimax and negamax: the recursive definitions and their loop forms.

These are the oracles every optimised search is compared against.
"""

from __future__ import annotations

from . import tree
from .tree import Color, Node, ensure_shallow, truncate


class ContractError(ValueError):
    """A precondition of a search routine does not hold."""


class NotTurnBasedError(ContractError):
    pass


def require_turn_based(u: Node) -> None:
    if not u.turn_based:
        raise NotTurnBasedError("negamax requires a turn-based tree (children alternate color)")


def minimax_spec(u: Node) -> int:
    ensure_shallow(u)
    return _minimax(u)


def _minimax(u: Node) -> int:
    if not u.children:
        return u.eval
    values = [_minimax(v) for v in u.children]
    return min(values) if u.color == Color.MIN else max(values)


def minimax_alg(u: Node) -> int:
    ensure_shallow(u)
    return _minimax_loop(u)


def _minimax_loop(u: Node) -> int:
    if not u.children:
        return u.eval
    if u.color == Color.MIN:
        value = tree.INFINITY
        for v in u.children:
            value = min(value, _minimax_loop(v))
        return value
    value = -tree.INFINITY
    for v in u.children:
        value = max(value, _minimax_loop(v))
    return value


def negamax_spec(u: Node) -> int:
    require_turn_based(u)
    ensure_shallow(u)
    return _negamax(u)


def _negamax(u: Node) -> int:
    if not u.children:
        return u.color * u.eval
    return max(-_negamax(v) for v in u.children)


def negamax_alg(u: Node) -> int:
    require_turn_based(u)
    ensure_shallow(u)
    return _negamax_loop(u)


def _negamax_loop(u: Node) -> int:
    if not u.children:
        return u.color * u.eval
    value = -tree.INFINITY
    for v in u.children:
        value = max(value, -_negamax_loop(v))
    return value


def minimax_depth(u: Node, d: int) -> int:
    return minimax_spec(truncate(u, d))


def negamax_depth(u: Node, d: int) -> int:
    require_turn_based(u)
    return negamax_spec(truncate(u, d))
