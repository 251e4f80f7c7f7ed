"""Graphviz DOT rendering of game trees.

Max nodes are white and Min nodes gray. Nodes beyond the search horizon are
dotted and reached by dashed edges. Roots of internal subtrees that occur
more than once (transpositions) get a double border.
"""

from __future__ import annotations

from collections import Counter

from .tree import Color, Node, iter_nodes


def to_dot(u: Node, horizon: int | None = None, title: str | None = None) -> str:
    occurrences = Counter(z for z in iter_nodes(u) if z.children)
    lines = [
        "digraph gametree {",
        '  graph [rankdir=TB, ordering=out];',
        '  node [shape=circle, style=filled, fontsize=12];',
    ]
    label = title or ""
    if horizon is not None:
        label = f"{label} (horizon {horizon})".strip()
    if label:
        lines.append(f'  label="{_escape(label)}"; labelloc=t;')

    counter = 0
    edges: list[str] = []

    def visit(z: Node, level: int) -> str:
        nonlocal counter
        name = f"n{counter}"
        counter += 1
        attrs = {
            "label": str(z.eval),
            "fillcolor": "white" if z.color == Color.MAX else "gray80",
        }
        if horizon is not None and level > horizon:
            attrs["style"] = '"filled,dotted"'
            attrs["fontcolor"] = "gray40"
        if z.children and occurrences[z] > 1:
            attrs["peripheries"] = "2"
        body = ", ".join(f'{k}={v}' if v.startswith('"') else f'{k}="{v}"' for k, v in attrs.items())
        lines.append(f"  {name} [{body}];")
        for child in z.children:
            child_name = visit(child, level + 1)
            beyond = horizon is not None and level + 1 > horizon
            edges.append(f"  {name} -> {child_name}" + (" [style=dashed];" if beyond else ";"))
        return name

    visit(u, 0)
    lines.extend(edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')
