#!/usr/bin/env python3
"""
Differential fuzzing against the witness checker, then shrinking.

The sound search survives a batch of random trees and call schedules. The
pattern-directed search finds a Marsland counterexample, which shrinks to a
handful of nodes and replays from its record alone.
"""

import time

from ttwitness import GeneratorConfig, Violation, find_ttm_counterexample, fuzz, replay, shrink
from ttwitness.dot import to_dot

cfg = GeneratorConfig(max_depth=4, branching=(1, 3), eval_range=(-5, 5), duplicate_probability=0.4, seed=1)
start = time.perf_counter()
report = fuzz("ttw", cfg, 500)
print(f"ttw: {report.trials} trials, {report.checks} checks, {len(report.violations)} violations "
      f"({time.perf_counter() - start:.1f}s)")

v = find_ttm_counterexample(100_000)
print(f"\nttm counterexample: {v.tree.size} nodes, returned {v.observed} on call {v.call_index}")
small = shrink(v)
print(f"shrunk to {small.tree.size} nodes, schedule "
      + ", ".join(f"{c.window}@{c.depth}" for c in small.schedule))

record = small.dumps()
again = Violation.loads(record)
print("replays from its record:", replay(again.tree, again.schedule, again.algorithm) is not None)
print()
print(to_dot(small.tree, small.probed_depth, "shrunk counterexample"))
