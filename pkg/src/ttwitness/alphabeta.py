"""Alpha-beta windows, the approximation predicates, and fail-soft / fail-hard search."""

from __future__ import annotations

from dataclasses import dataclass

from . import tree
from .reference import ContractError, _negamax, negamax_spec, require_turn_based
from .tree import Node, check_bounded, ensure_shallow


@dataclass(frozen=True)
class Window:
    """Open search window; ``alpha < beta`` is enforced."""

    alpha: int
    beta: int

    def __post_init__(self):
        check_bounded(self.alpha, "alpha")
        check_bounded(self.beta, "beta")
        if not self.alpha < self.beta:
            raise ContractError(f"window requires alpha < beta, got ({self.alpha}, {self.beta})")

    @classmethod
    def full(cls) -> Window:
        return cls(-tree.INFINITY + 1, tree.INFINITY)

    def __iter__(self):
        return iter((self.alpha, self.beta))

    def __str__(self) -> str:
        return f"({self.alpha}, {self.beta})"


def is_ab_result(x: int, e: int, w: Window) -> bool:
    """Is ``x`` an acceptable stand-in for the exact value ``e`` under window ``w``?

    Inside the window the value must be exact; at or below alpha it may be any
    upper bound between ``e`` and alpha, at or above beta any lower bound
    between beta and ``e``.
    """
    alpha, beta = w
    return (e <= x <= alpha) or (alpha < e == x < beta) or (beta <= x <= e)


def is_negamax_ab_result(x: int, u: Node, w: Window) -> bool:
    return is_ab_result(x, negamax_spec(u), w)


def pnm(u: Node, i: int) -> int:
    """Negamax value of ``u`` restricted to its first ``i`` children."""
    require_turn_based(u)
    if not 1 <= i <= len(u.children):
        raise ContractError(f"pnm needs 1 <= i <= {len(u.children)}, got {i}")
    return max(-_negamax(v) for v in u.children[:i])


def is_partial_negamax_ab_result(x: int, u: Node, i: int, w: Window) -> bool:
    return is_ab_result(x, pnm(u, i), w)


def _check_call(u: Node, w: Window, d: int) -> None:
    require_turn_based(u)
    ensure_shallow(u)
    if d < 0:
        raise ContractError(f"depth must be non-negative, got {d}")
    if not isinstance(w, Window):
        raise TypeError("window must be a Window")


def alphabeta_failsoft(u: Node, w: Window, d: int) -> int:
    _check_call(u, w, d)
    return _failsoft(u, w.alpha, w.beta, d)


def _failsoft(u: Node, alpha: int, beta: int, d: int) -> int:
    if d == 0 or not u.children:
        return u.color * u.eval
    value = -tree.INFINITY
    for v in u.children:
        value = max(value, -_failsoft(v, -beta, -max(alpha, value), d - 1))
        if value >= beta:
            break
    return value


def alphabeta_failhard(u: Node, w: Window, d: int) -> int:
    _check_call(u, w, d)
    return _failhard(u, w.alpha, w.beta, d)


def _failhard(u: Node, alpha: int, beta: int, d: int) -> int:
    alpha0 = alpha
    if d == 0 or not u.children:
        value = u.color * u.eval
    else:
        value = -tree.INFINITY
        for v in u.children:
            value = max(value, -_failhard(v, -beta, -alpha, d - 1))
            alpha = max(alpha, value)
            if alpha >= beta:
                break
    return min(max(value, alpha0), beta)
