#!/usr/bin/env python3
"""
Minimax and negamax on a small hand-built tree.

Shows the recursive and loop forms agreeing, the sign relation between the
two, and what a depth limit does to the value.
"""

from ttwitness import (
    Color, Node, leaf, minimax_alg, minimax_spec, negamax_depth,
    negamax_spec, serialize, truncate,
)

MAX, MIN = Color.MAX, Color.MIN

# Max to move; each Min reply has two Max follow-ups
u = Node(1, MAX, [
    Node(4, MIN, [leaf(3, MAX), leaf(9, MAX)]),
    Node(-2, MIN, [leaf(6, MAX), leaf(5, MAX)]),
])

print("tree:", serialize(u))
print("minimax (recursive, loop):", minimax_spec(u), minimax_alg(u))
print("negamax:", negamax_spec(u), "= color * minimax =", u.color * minimax_spec(u))

flipped = Node(u.eval, MIN, [Node(c.eval, MAX, [leaf(g.eval, MIN) for g in c.children]) for c in u.children])
print("same shape with Min to move, negamax:", negamax_spec(flipped), "minimax:", minimax_spec(flipped))

for d in range(u.height + 1):
    print(f"depth {d}: truncated tree has {truncate(u, d).size} nodes, negamax {negamax_depth(u, d)}")
