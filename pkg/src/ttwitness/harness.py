"""Random trees, differential fuzzing, counterexample search and shrinking."""

from __future__ import annotations

import hashlib
import json
import logging
import random
from collections.abc import Iterator, Sequence
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Literal

from . import tree
from .alphabeta import Window, alphabeta_failhard, alphabeta_failsoft, is_ab_result
from .reference import _negamax, negamax_spec
from .table import Flag, TableEntry, TranspositionTable, perturb_table
from .tree import Color, Node, iter_nodes, max_eval, parse, serialize, truncate
from .ttsearch import HybridOptions, negamax_ttm, negamax_ttw, negamax_ttw_hybrid
from .witness import (
    DEFAULT_GUARD,
    Strategy,
    WitnessReport,
    check_negamax_tt_result,
    check_valid_table_entry,
)

log = logging.getLogger(__name__)

TABLE_ALGORITHMS = ("ttw", "ttm")
WINDOW_ALGORITHMS = ("failsoft", "failhard")


# --- configuration and records -------------------------------------------


@dataclass(frozen=True)
class GeneratorConfig:
    max_depth: int = 4
    branching: tuple[int, int] = (0, 3)
    eval_range: tuple[int, int] = (-100, 100)
    turn_based: bool = True
    duplicate_probability: float = 0.0
    max_nodes: int = 500
    seed: int = 0

    def __post_init__(self):
        lo, hi = self.eval_range
        bmin, bmax = self.branching
        if self.max_nodes < 1:
            raise ValueError(f"unsatisfiable config: max_nodes={self.max_nodes} < 1")
        if self.max_depth < 0:
            raise ValueError(f"max_depth must be non-negative, got {self.max_depth}")
        if lo > hi:
            raise ValueError(f"eval_range lo > hi: {self.eval_range}")
        if max(abs(lo), abs(hi)) > max_eval():
            raise ValueError(f"eval_range {self.eval_range} exceeds MAX_EVAL={max_eval()}")
        if not 0 <= bmin <= bmax:
            raise ValueError(f"branching must satisfy 0 <= min <= max, got {self.branching}")
        if not 0.0 <= self.duplicate_probability <= 1.0:
            raise ValueError("duplicate_probability must lie in [0, 1]")


@dataclass(frozen=True)
class Call:
    window: Window
    depth: int
    perturb_seed: int | None = None

    def to_record(self) -> dict:
        return {
            "alpha": self.window.alpha,
            "beta": self.window.beta,
            "depth": self.depth,
            "perturb_seed": self.perturb_seed,
        }

    @classmethod
    def from_record(cls, rec: dict) -> Call:
        return cls(Window(rec["alpha"], rec["beta"]), rec["depth"], rec.get("perturb_seed"))


CallSchedule = tuple[Call, ...]


@dataclass(frozen=True)
class Violation:
    """A tree and call schedule on which ``algorithm`` fails a witness check.

    ``kind`` is ``"result"`` when the value returned by call ``call_index``
    has no witness, ``"table"`` when the entry stored under ``entry_key``
    after that call has none.
    """

    tree: Node
    schedule: CallSchedule
    algorithm: str
    observed: int
    report: WitnessReport
    kind: Literal["result", "table"]
    call_index: int
    entry_key: Node | None = None
    entry: TableEntry | None = None

    @property
    def probed_depth(self) -> int:
        if self.kind == "table":
            return self.entry.depth
        return self.schedule[self.call_index].depth

    @property
    def probed_tree(self) -> Node:
        return self.entry_key if self.kind == "table" else self.tree

    def to_record(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "kind": self.kind,
            "call_index": self.call_index,
            "observed": self.observed,
            "verdict": self.report.verdict,
            "tree": serialize(self.tree),
            "schedule": [c.to_record() for c in self.schedule],
            "entry": None
            if self.entry is None
            else {
                "tree": serialize(self.entry_key),
                "value": self.entry.value,
                "depth": self.entry.depth,
                "flag": self.entry.flag.value,
            },
            "report": self.report.to_record(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_record(), indent=1) + "\n"

    @classmethod
    def from_record(cls, rec: dict) -> Violation:
        report_rec = rec["report"]
        witness = report_rec.get("witness")
        report = WitnessReport(
            report_rec["verdict"] == "satisfied",
            parse(witness) if witness else None,
            report_rec["expansions_examined"],
            report_rec["exhausted"],
        )
        entry_rec = rec.get("entry")
        return cls(
            tree=parse(rec["tree"]),
            schedule=tuple(Call.from_record(c) for c in rec["schedule"]),
            algorithm=rec["algorithm"],
            observed=rec["observed"],
            report=report,
            kind=rec["kind"],
            call_index=rec["call_index"],
            entry_key=parse(entry_rec["tree"]) if entry_rec else None,
            entry=TableEntry(entry_rec["value"], entry_rec["depth"], Flag(entry_rec["flag"]))
            if entry_rec
            else None,
        )

    @classmethod
    def loads(cls, text: str) -> Violation:
        return cls.from_record(json.loads(text))

    def corpus_name(self) -> str:
        digest = hashlib.sha256(self.dumps().encode()).hexdigest()[:16]
        safe = "".join(ch if ch.isalnum() else "_" for ch in self.algorithm)
        return f"{safe}-{digest}.json"


# --- tree generation -----------------------------------------------------


def gen_tree(cfg: GeneratorConfig) -> Node:
    """Random tree, deterministic in ``cfg`` (including its seed).

    Each child slot is, with probability ``duplicate_probability``, filled by
    a copy of an earlier finished subtree that fits (same color when turn
    based, height within the remaining depth, size within the node budget),
    so transpositions occur at varying distances from the root.
    """
    rng = random.Random(cfg.seed)
    lo, hi = cfg.eval_range
    bmin, bmax = cfg.branching
    budget = cfg.max_nodes
    pool: list[Node] = []

    def build(level: int, color: Color) -> Node:
        nonlocal budget
        budget -= 1
        ev = rng.randint(lo, hi)
        remaining = cfg.max_depth - level
        n_children = rng.randint(bmin, bmax) if remaining > 0 else 0
        children = []
        for _ in range(n_children):
            if budget <= 0:
                break
            child_color = color.opponent if cfg.turn_based else rng.choice((Color.MAX, Color.MIN))
            if cfg.duplicate_probability and rng.random() < cfg.duplicate_probability:
                fits = [
                    s
                    for s in pool
                    if s.height <= remaining - 1
                    and s.size <= budget
                    and (not cfg.turn_based or s.color == child_color)
                ]
                internal = [s for s in fits if s.children]
                if internal or fits:
                    copy = rng.choice(internal or fits)
                    budget -= copy.size
                    children.append(copy)
                    continue
            children.append(build(level + 1, child_color))
        node = Node(ev, color, children)
        if level > 0:
            pool.append(node)
        return node

    return build(0, rng.choice((Color.MAX, Color.MIN)))


def _value_hints(u: Node) -> list[int]:
    hints = {u.color * u.eval}
    for z in iter_nodes(u):
        hints.add(z.color * z.eval)
        hints.add(-z.color * z.eval)
    for d in range(u.height + 1):
        hints.add(_negamax(truncate(u, d)))
    return sorted(hints)


def random_window(rng: random.Random, hints: Sequence[int], full_probability: float = 0.1) -> Window:
    """Windows near the tree's values so that cutoffs and bound reuse happen."""
    inf = tree.INFINITY
    if rng.random() < full_probability:
        return Window(-inf + 1, inf)
    alpha = rng.choice(hints) + rng.randint(-2, 1)
    beta = alpha + rng.randint(1, 5)
    alpha = max(-inf, min(alpha, inf - 1))
    beta = max(alpha + 1, min(beta, inf))
    return Window(alpha, beta)


def random_schedule(rng: random.Random, u: Node, max_calls: int = 3) -> CallSchedule:
    """One to ``max_calls`` calls on the root. Follow-up calls often keep the
    previous alpha, widen beta and search shallower, the sequence under which
    stored bounds get reused against a wider window."""
    hints = _value_hints(u)
    calls: list[Call] = []
    for i in range(rng.randint(1, max_calls)):
        if calls and rng.random() < 0.5:
            prev = calls[-1]
            alpha = prev.window.alpha
            beta = min(prev.window.beta + rng.randint(1, 4), tree.INFINITY)
            window = Window(alpha, max(beta, alpha + 1))
            depth = rng.randint(0, prev.depth)
        else:
            window = random_window(rng, hints)
            depth = rng.randint(0, u.height + 1)
        seed = rng.getrandbits(32) if i > 0 and rng.random() < 0.5 else None
        calls.append(Call(window, depth, seed))
    return tuple(calls)


# --- running and checking schedules --------------------------------------


def parse_algorithm(name: str) -> tuple[str, HybridOptions | None]:
    if name in TABLE_ALGORITHMS or name in WINDOW_ALGORITHMS:
        return name, None
    if name.startswith("ttw_hybrid:") or name == "ttw_hybrid":
        return "ttw_hybrid", HybridOptions.from_tag(name.partition(":")[2])
    raise ValueError(
        f"unknown algorithm {name!r}; expected one of ttw, ttm, failsoft, failhard, ttw_hybrid:<opts>"
    )


def hybrid_name(opts: HybridOptions) -> str:
    return f"ttw_hybrid:{opts.tag}"


def run_call(
    algorithm: str, u: Node, call: Call, table: TranspositionTable
) -> tuple[int, TranspositionTable]:
    base, opts = parse_algorithm(algorithm)
    if base == "ttw":
        return negamax_ttw(u, call.window, call.depth, table)
    if base == "ttm":
        return negamax_ttm(u, call.window, call.depth, table)
    if base == "ttw_hybrid":
        return negamax_ttw_hybrid(u, call.window, call.depth, table, opts)
    search = alphabeta_failsoft if base == "failsoft" else alphabeta_failhard
    return search(u, call.window, call.depth), table


@dataclass
class RunOutcome:
    violation: Violation | None = None
    checks: int = 0
    unknown: int = 0
    values: list[int] = field(default_factory=list)


def execute(
    u: Node,
    schedule: CallSchedule,
    algorithm: str,
    guard: int = DEFAULT_GUARD,
    strategy: Strategy = "auto",
) -> RunOutcome:
    """Run ``schedule`` on ``u`` threading the table, checking after each call.

    Stops at the first refuted check. Unknown verdicts are counted, not
    treated as violations.
    """
    base, _ = parse_algorithm(algorithm)
    outcome = RunOutcome()
    table = TranspositionTable()
    for index, call in enumerate(schedule):
        if call.perturb_seed is not None:
            table = perturb_table(table, call.perturb_seed)
        value, table = run_call(algorithm, u, call, table)
        outcome.values.append(value)

        if base in WINDOW_ALGORITHMS:
            truncated = truncate(u, call.depth)
            ok = is_ab_result(value, negamax_spec(truncated), call.window)
            report = WitnessReport(ok, truncated if ok else None, 1, True)
        else:
            report = check_negamax_tt_result(value, u, call.window, call.depth, guard, strategy)
        outcome.checks += 1
        if report.verdict == "unknown":
            outcome.unknown += 1
        elif not report.satisfied:
            outcome.violation = Violation(u, schedule, algorithm, value, report, "result", index)
            return outcome

        if base in WINDOW_ALGORITHMS:
            continue
        memo: dict = {}
        for key, entry in table.sorted_items():
            report = check_valid_table_entry(entry, key, guard, strategy, memo)
            outcome.checks += 1
            if report.verdict == "unknown":
                outcome.unknown += 1
            elif not report.satisfied:
                outcome.violation = Violation(
                    u, schedule, algorithm, entry.value, report, "table", index, key, entry
                )
                return outcome
    return outcome


def replay(
    u: Node,
    schedule: CallSchedule,
    algorithm: str,
    guard: int = DEFAULT_GUARD,
    strategy: Strategy = "auto",
) -> Violation | None:
    return execute(u, schedule, algorithm, guard, strategy).violation


# --- fuzzing -------------------------------------------------------------


@dataclass
class FuzzReport:
    algorithm: str
    trials: int
    violations: list[Violation] = field(default_factory=list)
    checks: int = 0
    unknown_checks: int = 0
    unknown_trials: int = 0
    replayed: list[Violation] = field(default_factory=list)

    def summary(self, cfg: GeneratorConfig | None = None) -> dict:
        out = {
            "algorithm": self.algorithm,
            "trials": self.trials,
            "violations": len(self.violations),
            "result_violations": sum(v.kind == "result" for v in self.violations),
            "table_violations": sum(v.kind == "table" for v in self.violations),
            "checks": self.checks,
            "unknown_checks": self.unknown_checks,
            "unknown_trials": self.unknown_trials,
            "replayed_corpus_violations": len(self.replayed),
        }
        if cfg is not None:
            out["config"] = asdict(cfg)
        return out


def trial_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def fuzz(
    algorithm: str,
    cfg: GeneratorConfig,
    trials: int,
    guard: int = DEFAULT_GUARD,
    *,
    strategy: Strategy = "auto",
    corpus_dir: str | Path | None = None,
    max_violations: int | None = None,
    max_calls: int = 3,
) -> FuzzReport:
    """Differentially test ``algorithm`` on ``trials`` random trees.

    Each trial derives its own seed from ``cfg.seed`` and the trial index, so
    results do not depend on execution order. Violations already stored in
    ``corpus_dir`` for this algorithm are replayed first; new ones are
    written there.
    """
    parse_algorithm(algorithm)
    report = FuzzReport(algorithm, trials)
    corpus = Path(corpus_dir) if corpus_dir is not None else None
    if corpus is not None and corpus.is_dir():
        for path in sorted(corpus.glob("*.json")):
            if path.name == "summary.json":
                continue
            try:
                old = Violation.loads(path.read_text())
            except (ValueError, KeyError):
                log.warning("skipping unreadable corpus file %s", path)
                continue
            if old.algorithm != algorithm:
                continue
            again = replay(old.tree, old.schedule, algorithm, guard, strategy)
            if again is not None:
                report.replayed.append(again)

    for index in range(trials):
        rng = trial_rng(cfg.seed, index)
        u = gen_tree(replace(cfg, seed=rng.getrandbits(64)))
        schedule = random_schedule(rng, u, max_calls)
        outcome = execute(u, schedule, algorithm, guard, strategy)
        report.checks += outcome.checks
        report.unknown_checks += outcome.unknown
        if outcome.unknown:
            report.unknown_trials += 1
            log.info("trial %d: %d check(s) hit the guard", index, outcome.unknown)
        if outcome.violation is not None:
            report.violations.append(outcome.violation)
            if max_violations is not None and len(report.violations) >= max_violations:
                report.trials = index + 1
                break

    if corpus is not None:
        corpus.mkdir(parents=True, exist_ok=True)
        for v in report.violations:
            (corpus / v.corpus_name()).write_text(v.dumps())
    return report


# --- Marsland counterexample search --------------------------------------


def find_ttm_counterexample(
    budget: int = 100_000,
    seed: int = 0,
    guard: int = DEFAULT_GUARD,
    eval_range: tuple[int, int] = (0, 4),
) -> Violation | None:
    """Search for a tree and schedule on which ``negamax_ttm`` returns a value
    no expansion justifies. Returns ``None`` if ``budget`` trials find nothing.

    A pattern hit only counts if it is a wrong result from the second call
    after the first call left a lower bound for the root in the table, which
    is the bound the second call then misuses.
    """
    return find_counterexample("ttm", budget, seed, guard, eval_range)


def find_counterexample(
    algorithm: str,
    budget: int = 100_000,
    seed: int = 0,
    guard: int = DEFAULT_GUARD,
    eval_range: tuple[int, int] = (0, 4),
) -> Violation | None:
    """Pattern-directed search for a violation of ``algorithm``.

    The first half of the budget goes to the known failure pattern: a small
    tree with transpositions searched twice, first deep with a narrow window,
    then one or two plies shallower with the same alpha and a wider beta.
    The rest of the budget is plain fuzzing.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    parse_algorithm(algorithm)
    lo, hi = eval_range
    if lo >= hi:
        raise ValueError(f"eval_range needs lo < hi, got {eval_range}")
    pattern_budget = (budget + 1) // 2
    for index in range(pattern_budget):
        rng = trial_rng(seed, index)
        u = gen_tree(
            GeneratorConfig(
                max_depth=rng.randint(3, 4),
                branching=rng.choice(((1, 3), (2, 2))),
                eval_range=eval_range,
                duplicate_probability=0.3,
                max_nodes=40,
                seed=rng.getrandbits(64),
            )
        )
        if u.height < 2:
            continue
        deep = u.height if rng.random() < 0.5 else rng.randint(2, u.height)
        shallow = max(0, deep - rng.choice((1, 1, 2)))
        alpha = rng.randint(lo, hi - 1)
        narrow = alpha + rng.randint(1, 2)
        wide = narrow + rng.randint(1, 4)
        schedule = (Call(Window(alpha, narrow), deep), Call(Window(alpha, wide), shallow))
        violation = replay(u, schedule, algorithm, guard)
        if violation is None:
            continue
        if algorithm != "ttm":
            return violation
        if violation.kind == "result" and violation.call_index == 1 and _stored_lowerbound(u, schedule[:1]):
            return violation

    cfg = GeneratorConfig(
        max_depth=4,
        branching=(1, 3),
        eval_range=eval_range,
        duplicate_probability=0.4,
        max_nodes=60,
        seed=seed,
    )
    found = fuzz(algorithm, cfg, budget - pattern_budget, guard, max_violations=1)
    return found.violations[0] if found.violations else None


def _stored_lowerbound(u: Node, schedule: CallSchedule) -> bool:
    table = TranspositionTable()
    for call in schedule:
        _, table = negamax_ttm(u, call.window, call.depth, table)
    entry = table.get(u)
    return entry is not None and entry.flag is Flag.LOWERBOUND


# --- shrinking -----------------------------------------------------------


def _rewrite(u: Node, target: Node, replacement: Node | None, root: bool = True) -> Node | None:
    if not root and u == target:
        return replacement
    if not u.children:
        return u
    kids = []
    changed = False
    for c in u.children:
        new = _rewrite(c, target, replacement, root=False)
        if new is not c:
            changed = True
        if new is not None:
            kids.append(new)
    return Node(u.eval, u.color, kids) if changed else u


def _rewrite_at(u: Node, path: tuple[int, ...], replacement: Node | None) -> Node:
    if not path:
        assert replacement is not None
        return replacement
    i, rest = path[0], path[1:]
    kids = list(u.children)
    if rest:
        kids[i] = _rewrite_at(kids[i], rest, replacement)
    elif replacement is None:
        del kids[i]
    else:
        kids[i] = replacement
    return Node(u.eval, u.color, kids)


def _positions(u: Node, path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], Node]]:
    yield path, u
    for i, c in enumerate(u.children):
        yield from _positions(c, path + (i,))


def _toward_zero(x: int) -> list[int]:
    if x == 0:
        return []
    out = [0, int(x / 2), x - (1 if x > 0 else -1)]
    return sorted(set(out) - {x}, key=abs)


def _tree_candidates(u: Node) -> Iterator[Node]:
    distinct: dict[Node, None] = {}
    for _, z in _positions(u):
        distinct.setdefault(z, None)
    subtrees = list(distinct)
    for s in subtrees:
        if s != u:
            yield _rewrite(u, s, None)
    for s in subtrees:
        if s.children and s != u:
            yield _rewrite(u, s, Node(s.eval, s.color))
    for path, z in _positions(u):
        if path:
            yield _rewrite_at(u, path, None)
    for path, z in _positions(u):
        if path and z.children:
            yield _rewrite_at(u, path, Node(z.eval, z.color))
    if u.children:
        yield Node(u.eval, u.color)
    for s in subtrees:
        for ev in _toward_zero(s.eval):
            new = Node(ev, s.color, s.children)
            yield new if s == u else _rewrite(u, s, new)


def _schedule_candidates(schedule: CallSchedule) -> Iterator[CallSchedule]:
    if len(schedule) > 1:
        for i in range(len(schedule)):
            yield schedule[:i] + schedule[i + 1 :]
    for i, call in enumerate(schedule):
        if call.perturb_seed is not None:
            yield schedule[:i] + (replace(call, perturb_seed=None),) + schedule[i + 1 :]
    for i, call in enumerate(schedule):
        if call.depth > 0:
            yield schedule[:i] + (replace(call, depth=call.depth - 1),) + schedule[i + 1 :]
    for i, call in enumerate(schedule):
        a, b = call.window
        for na in _toward_zero(a):
            if na < b:
                yield schedule[:i] + (replace(call, window=Window(na, b)),) + schedule[i + 1 :]
        for nb in _toward_zero(b):
            if a < nb:
                yield schedule[:i] + (replace(call, window=Window(a, nb)),) + schedule[i + 1 :]


def shrink(v: Violation, guard: int = DEFAULT_GUARD) -> Violation:
    """Greedy reduction to a fixpoint.

    A candidate (smaller tree, simpler evals or shorter schedule) is kept iff
    replaying it still yields a violation of the same kind. The result is
    the replayed violation of the final candidate.
    """

    def attempt(u: Node, schedule: CallSchedule) -> Violation | None:
        if u.height > 0 and not u.turn_based:
            return None
        found = replay(u, schedule, v.algorithm, guard)
        return found if found is not None and found.kind == v.kind else None

    current = attempt(v.tree, v.schedule)
    if current is None:
        raise ValueError("violation does not reproduce")
    progress = True
    while progress:
        progress = False
        for u in _tree_candidates(current.tree):
            found = attempt(u, current.schedule)
            if found is not None:
                current, progress = found, True
                break
        if progress:
            continue
        for schedule in _schedule_candidates(current.schedule):
            found = attempt(current.tree, schedule)
            if found is not None:
                current, progress = found, True
                break
    return current
