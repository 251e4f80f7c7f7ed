import random

import pytest
from hypothesis import settings, strategies as st

from ttwitness import Color, GeneratorConfig, Node, gen_tree

settings.register_profile("default", deadline=None)
settings.load_profile("default")

# filled by the acceptance tests, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@st.composite
def trees(draw, max_depth=3, max_children=3, evals=st.integers(-6, 6), turn_based=True, color=None):
    """Small trees; later siblings sometimes copy an earlier sibling so that
    transpositions show up."""
    if color is None:
        color = draw(st.sampled_from(Color))
    ev = draw(evals)
    n = 0 if max_depth == 0 else draw(st.integers(0, max_children))
    children = []
    for _ in range(n):
        child_color = color.opponent if turn_based else draw(st.sampled_from(Color))
        if children and draw(st.booleans()) and children[0].color == child_color:
            children.append(children[0])
        else:
            children.append(
                draw(trees(max_depth - 1, max_children, evals, turn_based, child_color))
            )
    return Node(ev, color, children)


def random_trees(n, seed=0, **overrides):
    """``n`` generator trees with per-tree seeds derived from ``seed``."""
    params = dict(max_depth=4, branching=(0, 3), eval_range=(-20, 20), duplicate_probability=0.3)
    params.update(overrides)
    rng = random.Random(seed)
    return [gen_tree(GeneratorConfig(seed=rng.getrandbits(64), **params)) for _ in range(n)]


@pytest.fixture
def shared_subtree_case():
    """A tree whose root is searched twice, narrow and deep then wide and
    shallow. Under Marsland's search the second call reuses a stored lower
    bound of 3 and returns 2, while the depth-2 expansions are worth 1 or 4."""
    W, B = Color.MAX, Color.MIN
    c = Node(0, W, [Node(3, B), Node(4, B)])
    b = Node(0, B, [c])
    e = Node(0, B, [Node(2, W), Node(1, W)])
    v = Node(0, W, [b, e])
    y = Node(0, B, [Node(2, W), v, Node(1, W)])
    k = Node(0, B, [Node(0, W, [Node(0, B, [v])])])
    u = Node(0, W, [y, k])
    return u, v
