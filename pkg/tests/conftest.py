import itertools

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from hoffsign.sigraph import SignedGraph

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@st.composite
def signed_graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    signs = draw(st.lists(st.sampled_from((-1, 0, 1)), min_size=len(pairs), max_size=len(pairs)))
    return SignedGraph.from_signed_edges(n, [(u, v, s) for (u, v), s in zip(pairs, signs) if s])


@st.composite
def graph_and_subset(draw, max_n=7):
    S = draw(signed_graphs(max_n=max_n))
    W = draw(st.sets(st.integers(0, S.n - 1)))
    return S, W


@st.composite
def graph_and_perm(draw, max_n=7):
    S = draw(signed_graphs(max_n=max_n))
    perm = draw(st.permutations(range(S.n)))
    return S, list(perm)


def random_signed(rng: np.random.Generator, n: int, p: float = 0.5) -> SignedGraph:
    edges = []
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.append((u, v, 1 if rng.random() < 0.5 else -1))
    return SignedGraph.from_signed_edges(n, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_configure(config):
    config._acceptance_lines = {}


@pytest.fixture
def criterion(request):
    """report(key, ok, detail) records one acceptance line, printed at the end of the run."""

    def report(key, ok: bool, detail: str):
        line = f"{key}: {'PASS' if ok else 'FAIL'}  {detail}"
        request.config._acceptance_lines[key] = line
        print(line)

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(lines):
        terminalreporter.write_line(lines[key])
