#!/usr/bin/env python3
"""
Fail-soft and fail-hard alpha-beta against the exact value.

Inside the window both return the exact value. Outside it fail-hard clamps to
the window edge while fail-soft reports the bound it actually found.
"""

from ttwitness import Color, Node, Window, alphabeta_failhard, alphabeta_failsoft, is_ab_result, leaf, negamax_depth

MAX, MIN = Color.MAX, Color.MIN

u = Node(0, MAX, [
    Node(0, MIN, [leaf(3, MAX), leaf(8, MAX)]),
    Node(0, MIN, [leaf(9, MAX), leaf(12, MAX)]),
    Node(0, MIN, [leaf(1, MAX), leaf(2, MAX)]),
])
exact = negamax_depth(u, 2)
print("exact value:", exact)

for w in (Window(0, 20), Window(0, 5), Window(10, 15), Window.full()):
    soft = alphabeta_failsoft(u, w, 2)
    hard = alphabeta_failhard(u, w, 2)
    print(f"window {w}: fail-soft {soft:>3}  fail-hard {hard:>3}  both sound: "
          f"{is_ab_result(soft, exact, w) and is_ab_result(hard, exact, w)}")
