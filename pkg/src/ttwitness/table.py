"""Transposition table entries and a persistent table keyed by structural identity."""

from __future__ import annotations

import json
import random
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from enum import Enum

from .tree import Node, check_bounded, parse, serialize


class Flag(Enum):
    EXACT = "exact"
    LOWERBOUND = "lowerbound"
    UPPERBOUND = "upperbound"


@dataclass(frozen=True)
class TableEntry:
    value: int
    depth: int
    flag: Flag

    def __post_init__(self):
        check_bounded(self.value, "table value")
        if self.depth < 0:
            raise ValueError(f"table depth must be non-negative, got {self.depth}")

    def __str__(self) -> str:
        return f"{self.value}@{self.depth}:{self.flag.value}"


class TranspositionTable(Mapping[Node, TableEntry]):
    """Immutable mapping from trees to entries.

    Searches take a table and hand back a new one, so a multi-call schedule
    makes every intermediate table explicit.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[Node, TableEntry] | None = None):
        self._entries: dict[Node, TableEntry] = dict(entries or {})

    def __getitem__(self, key: Node) -> TableEntry:
        return self._entries[key]

    def __iter__(self) -> Iterator[Node]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TranspositionTable):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self):
        raise TypeError("TranspositionTable is not hashable")

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {v}" for k, v in self.sorted_items())
        return f"TranspositionTable({{{body}}})"

    def set(self, key: Node, entry: TableEntry) -> TranspositionTable:
        entries = dict(self._entries)
        entries[key] = entry
        return TranspositionTable(entries)

    def remove(self, key: Node) -> TranspositionTable:
        entries = dict(self._entries)
        del entries[key]
        return TranspositionTable(entries)

    def to_dict(self) -> dict[Node, TableEntry]:
        return dict(self._entries)

    def sorted_items(self) -> list[tuple[Node, TableEntry]]:
        return sorted(self._entries.items(), key=lambda kv: kv[0].fingerprint())


def perturb_table(table: TranspositionTable, seed: int) -> TranspositionTable:
    """Drop a random subset of entries, modelling hash-table eviction."""
    rng = random.Random(seed)
    kept = {k: v for k, v in table.sorted_items() if rng.random() >= 0.5}
    return TranspositionTable(kept)


def snapshot_records(table: TranspositionTable) -> list[dict]:
    return [
        {"tree": serialize(k), "value": e.value, "depth": e.depth, "flag": e.flag.value}
        for k, e in table.sorted_items()
    ]


def dump_snapshot(table: TranspositionTable) -> str:
    return json.dumps(snapshot_records(table), indent=1) + "\n"


def load_snapshot(text: str) -> TranspositionTable:
    records = json.loads(text)
    if not isinstance(records, list):
        raise ValueError("table snapshot must be a JSON array")
    entries = {}
    for i, rec in enumerate(records):
        try:
            key = parse(rec["tree"])
            entry = TableEntry(rec["value"], rec["depth"], Flag(rec["flag"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"record {i}: malformed table entry ({exc})") from None
        entries[key] = entry
    return TranspositionTable(entries)
