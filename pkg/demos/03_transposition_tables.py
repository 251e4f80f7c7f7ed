#!/usr/bin/env python3
"""
Transposition-table search keeps state between calls.

The same subtree appears twice, so the second occurrence is answered from the
table. Repeated calls on the root reuse the stored bounds.
"""

from ttwitness import Color, Node, Window, leaf, negamax_ttm, negamax_ttw
from ttwitness.table import dump_snapshot

MAX, MIN = Color.MAX, Color.MIN

s = Node(0, MIN, [leaf(4, MAX), leaf(7, MAX)])
u = Node(0, MAX, [s, Node(0, MIN, [leaf(5, MAX), Node(0, MAX, [s])]), s])

table = None
for w, d in ((Window(0, 3), 3), (Window(0, 10), 3), (Window(0, 10), 1)):
    value, table = negamax_ttw(u, w, d, table)
    print(f"ttw {w} depth {d}: {value}   root entry {table.get(u)}")

print("\nfinal table:")
print(dump_snapshot(table))

value, _ = negamax_ttm(u, Window(0, 10), 3)
print("\nttm on a fresh table, same tree:", value)
