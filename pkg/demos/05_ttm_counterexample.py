#!/usr/bin/env python3
"""
Marsland-style table search can return an unjustified value.

A narrow deep search leaves a lower bound on the root. A wider, shallower
search then raises alpha to that bound and reports a value that no expansion
at its own depth has. The witness-checked search returns a justified value
on the same calls.
"""

from ttwitness import Color, Node, Window, check_negamax_tt_result, negamax_ttm, negamax_ttw, witness_value_set

W, B = Color.MAX, Color.MIN

c = Node(0, W, [Node(3, B), Node(4, B)])
v = Node(0, W, [Node(0, B, [c]), Node(0, B, [Node(2, W), Node(1, W)])])

for name, search in (("ttm", negamax_ttm), ("ttw", negamax_ttw)):
    first, table = search(v, Window(0, 2), 4)
    second, table = search(v, Window(0, 5), 2, table)
    verdict = check_negamax_tt_result(second, v, Window(0, 5), 2).verdict
    print(f"{name}: deep call {first}, shallow call {second}, root entry {table[v]}, verdict {verdict}")

print("values of the depth-2 expansions:", sorted(witness_value_set(v, 2)))
