import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from treeaa import LabeledTree, parse_tree

# The 8-vertex example tree whose Euler visit list from v1 is
# [v1,v2,v3,v6,v3,v7,v3,v2,v4,v8,v4,v2,v5,v2,v1].
EIGHT_VERTEX_DOC = """\
v1 v2
v2 v3
v3 v6
v3 v7
v2 v4
v4 v8
v2 v5
"""

EIGHT_VERTEX_EULER = (
    "v1", "v2", "v3", "v6", "v3", "v7", "v3", "v2",
    "v4", "v8", "v4", "v2", "v5", "v2", "v1",
)


@pytest.fixture(scope="session")
def eight_vertex_tree() -> LabeledTree:
    return parse_tree(EIGHT_VERTEX_DOC)


@pytest.fixture(scope="session")
def hull_example_tree() -> LabeledTree:
    # hull({u1, u2, u3}) must be exactly {u1, u2, u3, u4, u5}; u6 and u7
    # hang off the hull to keep the example non-trivial.
    return LabeledTree(
        [
            ("u1", "u4"),
            ("u4", "u5"),
            ("u5", "u2"),
            ("u5", "u3"),
            ("u4", "u6"),
            ("u2", "u7"),
        ]
    )


@pytest.fixture(scope="session")
def spine_tree() -> LabeledTree:
    # An 8-vertex spine v1..v8 with inputs u1, u2, u3 hanging off it such
    # that their projections onto the spine are v3, v4, v6.
    edges = [(f"v{i}", f"v{i + 1}") for i in range(1, 8)]
    edges += [("u1", "w1"), ("w1", "v3"), ("u2", "v4"), ("u3", "v6")]
    return LabeledTree(edges)
