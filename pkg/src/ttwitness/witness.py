"""All-or-none expansions and the witness-based correctness checks.

A search result at depth ``d`` is justified when some all-or-none expansion
of the depth-``d`` truncation (every node keeps all of its children or none
of them) has a negamax value the result approximates correctly. Table
entries are justified the same way, with the flag choosing the relation.

Two decision routes are provided:

``"enumerate"``
    Brute force. Expansions are generated one by one, up to a guard; a
    search that hits the guard without finding a witness is ``unknown``.
``"values"``
    Exact. The set of values reachable by expansions is built bottom-up
    with one representative witness per value, so no guard is needed.
``"auto"``
    Enumerate when the expansion count fits in the guard, else values.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator
from dataclasses import dataclass
from typing import Literal

from . import tree
from .alphabeta import Window, is_ab_result
from .reference import _negamax, require_turn_based
from .table import Flag, TableEntry, TranspositionTable
from .tree import Node, ensure_shallow, serialize

DEFAULT_GUARD = 100_000

Strategy = Literal["enumerate", "values", "auto"]


class GuardExceededError(RuntimeError):
    """Enumeration stopped at the guard before it could answer."""


class _GuardSignal:
    __slots__ = ()

    def __repr__(self) -> str:
        return "GUARD_EXCEEDED"


GUARD_EXCEEDED = _GuardSignal()


@dataclass(frozen=True)
class WitnessReport:
    """Outcome of one existential check.

    ``exhausted`` is true when the whole space was covered; ``satisfied`` may
    be true without it (the search stops at the first witness), but a
    ``satisfied=False`` report is only a refutation when ``exhausted``.
    """

    satisfied: bool
    witness: Node | None
    expansions_examined: int
    exhausted: bool

    @property
    def verdict(self) -> str:
        if self.satisfied:
            return "satisfied"
        return "refuted" if self.exhausted else "unknown"

    def to_record(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": serialize(self.witness) if self.witness is not None else None,
            "expansions_examined": self.expansions_examined,
            "exhausted": self.exhausted,
        }


def is_aon_expansion(u_prime: Node, u: Node, d: int) -> bool:
    if u.eval != u_prime.eval or u.color != u_prime.color:
        return False
    c, c_prime = u.children, u_prime.children
    if d > 0:
        return len(c) == len(c_prime) and all(
            is_aon_expansion(a, b, d - 1) for a, b in zip(c_prime, c)
        )
    return len(c_prime) == 0 or (
        len(c) == len(c_prime) and all(is_aon_expansion(a, b, 0) for a, b in zip(c_prime, c))
    )


def count_aon_expansions(u: Node, d: int) -> int:
    if not u.children:
        return 1
    product = 1
    for v in u.children:
        product *= count_aon_expansions(v, max(d - 1, 0))
    return product if d > 0 else 1 + product


def _expansions(u: Node, d: int) -> Iterator[Node]:
    if u.height <= d:
        # nothing below the horizon: u is its own unique expansion
        yield u
        return
    if d == 0:
        yield Node(u.eval, u.color, ())
    for kids in _child_products(u.children, max(d - 1, 0), 0):
        yield Node(u.eval, u.color, kids)


def _child_products(children: tuple[Node, ...], d: int, i: int) -> Iterator[tuple[Node, ...]]:
    if i == len(children):
        yield ()
        return
    for first in _expansions(children[i], d):
        for rest in _child_products(children, d, i + 1):
            yield (first,) + rest


def enumerate_aon_expansions(
    u: Node, d: int, guard: int = DEFAULT_GUARD
) -> Iterator[Node | _GuardSignal]:
    """Stream every all-or-none expansion of ``u`` at depth ``d``.

    Children are handled left to right and "stop here" is emitted before
    "expand". If more than ``guard`` expansions exist, ``GUARD_EXCEEDED`` is
    yielded after the first ``guard`` and the stream ends.
    """
    if guard < 1:
        raise ValueError("guard must be at least 1")
    ensure_shallow(u)
    for n, expansion in enumerate(_expansions(u, d)):
        if n == guard:
            yield GUARD_EXCEEDED
            return
        yield expansion


def expansion_values(u: Node, d: int, memo: dict | None = None) -> dict[int, Node]:
    """Map each negamax value reachable by an expansion to one witness."""
    require_turn_based(u)
    ensure_shallow(u)
    return _values(u, d, {} if memo is None else memo)


def _values(u: Node, d: int, memo: dict) -> dict[int, Node]:
    if u.height <= d:
        return {_negamax(u): u}
    key = (u, d)
    cached = memo.get(key)
    if cached is not None:
        return cached
    result: dict[int, Node] = {}
    if d == 0:
        result[u.color * u.eval] = Node(u.eval, u.color, ())
    partial: dict[int, tuple[Node, ...]] = {-tree.INFINITY: ()}
    for v in u.children:
        options = _values(v, max(d - 1, 0), memo)
        merged: dict[int, tuple[Node, ...]] = {}
        for best, kids in partial.items():
            for x, w in options.items():
                m = max(best, -x)
                if m not in merged:
                    merged[m] = kids + (w,)
        partial = merged
    for value, kids in partial.items():
        if value not in result:
            result[value] = Node(u.eval, u.color, kids)
    memo[key] = result
    return result


def _decide(
    u: Node,
    d: int,
    accept: Callable[[int], bool],
    guard: int,
    strategy: Strategy,
    memo: dict | None = None,
) -> WitnessReport:
    require_turn_based(u)
    if d < 0:
        raise ValueError(f"depth must be non-negative, got {d}")
    if strategy == "auto":
        strategy = "enumerate" if count_aon_expansions(u, d) <= guard else "values"
    if strategy == "values":
        values = _values(u, d, {} if memo is None else memo)
        for n, (value, witness) in enumerate(values.items(), start=1):
            if accept(value):
                return WitnessReport(True, witness, n, True)
        return WitnessReport(False, None, len(values), True)
    if strategy != "enumerate":
        raise ValueError(f"unknown strategy {strategy!r}")
    examined = 0
    for expansion in enumerate_aon_expansions(u, d, guard):
        if expansion is GUARD_EXCEEDED:
            return WitnessReport(False, None, examined, False)
        examined += 1
        if accept(_negamax(expansion)):
            return WitnessReport(True, expansion, examined, False)
    return WitnessReport(False, None, examined, True)


def check_negamax_tt_result(
    x: int,
    u: Node,
    w: Window,
    d: int,
    guard: int = DEFAULT_GUARD,
    strategy: Strategy = "enumerate",
) -> WitnessReport:
    """Does some expansion of ``u`` at depth ``d`` justify result ``x`` under ``w``?"""
    return _decide(u, d, lambda e: is_ab_result(x, e, w), guard, strategy)


def entry_acceptor(t: TableEntry) -> Callable[[int], bool]:
    if t.flag is Flag.EXACT:
        return lambda e: e == t.value
    if t.flag is Flag.UPPERBOUND:
        return lambda e: e <= t.value
    return lambda e: e >= t.value


def check_valid_table_entry(
    t: TableEntry,
    u: Node,
    guard: int = DEFAULT_GUARD,
    strategy: Strategy = "enumerate",
    memo: dict | None = None,
) -> WitnessReport:
    return _decide(u, t.depth, entry_acceptor(t), guard, strategy, memo)


def check_valid_table(
    table: TranspositionTable,
    guard: int = DEFAULT_GUARD,
    strategy: Strategy = "enumerate",
) -> dict[Node, WitnessReport]:
    """Per-key reports, in fingerprint order."""
    memo: dict = {}
    return {
        key: check_valid_table_entry(entry, key, guard, strategy, memo)
        for key, entry in table.sorted_items()
    }


def is_valid_table(table: TranspositionTable, guard: int = DEFAULT_GUARD) -> bool:
    return all(r.satisfied for r in check_valid_table(table, guard, "auto").values())


def witness_value_set(
    u: Node, d: int, guard: int = DEFAULT_GUARD, strategy: Strategy = "enumerate"
) -> frozenset[int]:
    """Distinct negamax values over all expansions. Raises on guard exhaustion."""
    require_turn_based(u)
    if strategy == "auto":
        strategy = "enumerate" if count_aon_expansions(u, d) <= guard else "values"
    if strategy == "values":
        return frozenset(expansion_values(u, d))
    values = set()
    for expansion in enumerate_aon_expansions(u, d, guard):
        if expansion is GUARD_EXCEEDED:
            raise GuardExceededError(f"more than {guard} expansions")
        values.add(_negamax(expansion))
    return frozenset(values)
