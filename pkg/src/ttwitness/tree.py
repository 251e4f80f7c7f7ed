"""Immutable game trees, truncation, structural identity and the tree file format."""

from __future__ import annotations

import hashlib
import json
from enum import IntEnum
from typing import Any, Iterable, Iterator

__all__ = [
    "INFINITY",
    "BoundError",
    "Color",
    "Node",
    "ParseError",
    "TreeTooDeepError",
    "height",
    "infinity",
    "is_turn_based",
    "iter_nodes",
    "leaf",
    "make_node",
    "max_eval",
    "node_count",
    "parse",
    "serialize",
    "set_infinity",
    "structurally_equal",
    "to_record",
    "from_record",
    "truncate",
]

INFINITY = 1 << 20

# Recursive algorithms refuse trees taller than this instead of overflowing the stack.
MAX_HEIGHT = 400


class BoundError(ValueError):
    """A value lies outside the bounded integer range."""


class ParseError(ValueError):
    """Malformed tree text."""

    def __init__(self, message: str, position: str | None = None):
        self.position = position
        super().__init__(f"{position}: {message}" if position else message)


class TreeTooDeepError(RecursionError):
    pass


def infinity() -> int:
    return INFINITY


def max_eval() -> int:
    """Largest legal leaf magnitude; keeps the -INFINITY loop sentinel out of reach."""
    return INFINITY - 1


def set_infinity(value: int) -> int:
    """Override the bound used by all searches. Returns the previous value."""
    global INFINITY
    if value < 2:
        raise BoundError(f"INFINITY must be at least 2, got {value}")
    previous, INFINITY = INFINITY, int(value)
    return previous


def check_bounded(value: int, what: str = "value") -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise BoundError(f"{what} must be an integer, got {value!r}")
    if abs(value) > INFINITY:
        raise BoundError(f"{what} {value} outside [-INFINITY, INFINITY] with INFINITY={INFINITY}")
    return value


class Color(IntEnum):
    MAX = 1
    MIN = -1

    @property
    def opponent(self) -> Color:
        return Color(-self)


class Node:
    """A game tree node: evaluation, player to move and ordered children.

    Nodes are values. Equality and hashing are structural, so two separately
    built copies of the same subtree address the same transposition table
    entry. A 128-bit fingerprint is computed bottom-up at construction and
    equal fingerprints are confirmed by a full comparison.
    """

    __slots__ = ("eval", "color", "children", "size", "height", "turn_based", "_digest", "_hash")

    eval: int
    color: Color
    children: tuple[Node, ...]
    size: int
    height: int
    turn_based: bool

    def __init__(self, eval: int, color: Color | int, children: Iterable[Node] = ()):
        if isinstance(eval, bool) or not isinstance(eval, int):
            raise BoundError(f"eval must be an integer, got {eval!r}")
        if abs(eval) > max_eval():
            raise BoundError(f"eval {eval} exceeds MAX_EVAL={max_eval()} (INFINITY - 1)")
        color = Color(color)
        children = tuple(children)
        for child in children:
            if not isinstance(child, Node):
                raise TypeError(f"children must be Node instances, got {type(child).__name__}")
        h = hashlib.blake2b(f"{eval}:{int(color)}:{len(children)}".encode(), digest_size=16)
        for child in children:
            h.update(child._digest)
        digest = h.digest()
        setattr_ = object.__setattr__
        setattr_(self, "eval", eval)
        setattr_(self, "color", color)
        setattr_(self, "children", children)
        setattr_(self, "size", 1 + sum(c.size for c in children))
        setattr_(self, "height", 1 + max(c.height for c in children) if children else 0)
        setattr_(
            self,
            "turn_based",
            all(c.color == -color and c.turn_based for c in children),
        )
        setattr_(self, "_digest", digest)
        setattr_(self, "_hash", int.from_bytes(digest[:8], "big", signed=True))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("Node is immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Node):
            return NotImplemented
        return structurally_equal(self, other)

    def __repr__(self) -> str:
        if not self.children:
            return f"leaf({self.eval}, {self.color.name})"
        return f"Node({self.eval}, {self.color.name}, <{len(self.children)} children, {self.size} nodes>)"

    def __reduce__(self):
        return (Node, (self.eval, self.color, self.children))

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def fingerprint(self) -> str:
        return self._digest.hex()

    def replace(self, *, eval: int | None = None, children: Iterable[Node] | None = None) -> Node:
        return Node(
            self.eval if eval is None else eval,
            self.color,
            self.children if children is None else children,
        )


def make_node(eval: int, color: Color | int, children: Iterable[Node] = ()) -> Node:
    return Node(eval, color, children)


def leaf(eval: int, color: Color | int) -> Node:
    return Node(eval, color, ())


def structurally_equal(u: Node, v: Node) -> bool:
    stack = [(u, v)]
    while stack:
        a, b = stack.pop()
        if a is b:
            continue
        if a._digest != b._digest:
            return False
        if a.eval != b.eval or a.color != b.color or len(a.children) != len(b.children):
            return False
        stack.extend(zip(a.children, b.children))
    return True


def node_count(u: Node) -> int:
    return u.size


def height(u: Node) -> int:
    return u.height


def is_turn_based(u: Node) -> bool:
    return u.turn_based


def iter_nodes(u: Node) -> Iterator[Node]:
    """Preorder traversal; duplicated subtrees are visited once per occurrence."""
    stack = [u]
    while stack:
        z = stack.pop()
        yield z
        stack.extend(reversed(z.children))


def ensure_shallow(u: Node) -> None:
    if u.height > MAX_HEIGHT:
        raise TreeTooDeepError(f"tree height {u.height} exceeds supported maximum {MAX_HEIGHT}")


def truncate(u: Node, d: int) -> Node:
    """Keep the nodes within distance ``d`` of the root."""
    if d < 0:
        raise ValueError(f"depth must be non-negative, got {d}")
    ensure_shallow(u)
    return _truncate(u, d)


def _truncate(u: Node, d: int) -> Node:
    if u.height <= d:
        return u
    if d == 0:
        return Node(u.eval, u.color, ())
    return Node(u.eval, u.color, [_truncate(c, d - 1) for c in u.children])


# --- serialization -------------------------------------------------------


def to_record(u: Node) -> dict:
    return {
        "eval": u.eval,
        "color": int(u.color),
        "children": [to_record(c) for c in u.children],
    }


def serialize(u: Node) -> str:
    """Canonical compact text; structurally equal trees give identical bytes."""
    ensure_shallow(u)
    return json.dumps(to_record(u), separators=(",", ":"))


def parse(text: str) -> Node:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return from_record(data)


def from_record(data: Any) -> Node:
    """Build a tree from decoded JSON, expanding ``id``/``ref`` sharing."""
    labels: dict[str, Node] = {}
    open_labels: set[str] = set()

    def build(obj: Any, path: str, level: int) -> Node:
        if level > MAX_HEIGHT:
            raise ParseError(f"nesting deeper than {MAX_HEIGHT}", path)
        if not isinstance(obj, dict):
            raise ParseError(f"expected an object, got {type(obj).__name__}", path)
        if "ref" in obj:
            if set(obj) != {"ref"}:
                raise ParseError("an object with 'ref' may not carry other keys", path)
            name = obj["ref"]
            if not isinstance(name, str):
                raise ParseError("'ref' must be a string", path)
            if name in open_labels:
                raise ParseError(f"cyclic reference to {name!r}", path)
            if name not in labels:
                raise ParseError(f"reference to undefined label {name!r}", path)
            return labels[name]
        unknown = set(obj) - {"eval", "color", "children", "id"}
        if unknown:
            raise ParseError(f"unknown keys {sorted(unknown)}", path)
        for key in ("eval", "color"):
            if key not in obj:
                raise ParseError(f"missing {key!r}", path)
        ev, color = obj["eval"], obj["color"]
        if isinstance(ev, bool) or not isinstance(ev, int):
            raise ParseError(f"'eval' must be an integer, got {ev!r}", path)
        if isinstance(color, bool) or color not in (1, -1):
            raise ParseError(f"'color' must be 1 or -1, got {color!r}", path)
        children = obj.get("children", [])
        if not isinstance(children, list):
            raise ParseError("'children' must be an array", path)
        label = obj.get("id")
        if label is not None:
            if not isinstance(label, str):
                raise ParseError("'id' must be a string", path)
            if label in labels or label in open_labels:
                raise ParseError(f"duplicate label {label!r}", path)
            open_labels.add(label)
        kids = [build(c, f"{path}.children[{i}]", level + 1) for i, c in enumerate(children)]
        try:
            node = Node(ev, color, kids)
        except BoundError as exc:
            raise BoundError(f"{path}: {exc}") from None
        if label is not None:
            open_labels.discard(label)
            labels[label] = node
        return node

    return build(data, "$", 0)
