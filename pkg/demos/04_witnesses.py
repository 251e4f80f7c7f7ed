#!/usr/bin/env python3
"""
Checking a depth-limited result by finding a witness.

With transpositions a table search may return a value that is not the value
of the truncated tree. It is still fine if some all-or-none expansion (every
node keeps all of its children or none) has that value.
"""

from ttwitness import (
    Color, Node, Window, check_negamax_tt_result, count_aon_expansions,
    enumerate_aon_expansions, leaf, negamax_depth, negamax_spec, negamax_ttw, serialize,
    witness_value_set,
)

MAX, MIN = Color.MAX, Color.MIN

s = Node(-4, MAX, [leaf(6, MIN)])
u = Node(0, MIN, [s, Node(6, MAX, [Node(-3, MIN, [s])])])

value, table = negamax_ttw(u, Window.full(), 3)
print("value of the depth-3 truncation:", negamax_depth(u, 3))
print("ttw with a full window:", value)
print("the shared subtree was stored as", table[s])

print(f"\n{count_aon_expansions(u, 3)} expansions at depth 3:")
for x in enumerate_aon_expansions(u, 3):
    print(f"  {negamax_spec(x):>3}  {serialize(x)}")
print("value set:", sorted(witness_value_set(u, 3)))

report = check_negamax_tt_result(value, u, Window.full(), 3)
print("\nverdict:", report.verdict)
print("witness:", serialize(report.witness))
