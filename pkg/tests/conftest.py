from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from sparsekit.structures import Graph, OrientedGraph  # noqa: E402

CORPUS = Path(__file__).parent / "corpus"


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(range(n), (p for p, c in zip(pairs, chosen) if c))


@st.composite
def d1_digraphs(draw, min_n: int = 0, max_n: int = 10):
    """Acyclic digraphs with out-degree at most 2, with arbitrary vertex ids."""
    n = draw(st.integers(min_n, max_n))
    ranking = draw(st.permutations(list(range(n))))
    arcs = []
    for i, v in enumerate(ranking):
        if i:
            targets = draw(st.lists(st.sampled_from(ranking[:i]), max_size=2, unique=True))
            arcs.extend((v, w) for w in targets)
    return OrientedGraph(range(n), arcs)


@st.composite
def permutations_of(draw, vertices):
    vs = sorted(vertices)
    image = draw(st.permutations(vs))
    return dict(zip(vs, image))


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS


# one (criterion, verdict, detail) line per acceptance criterion, printed at the end
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
