import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from enmity.generators import GeneratorSpec, generate
from enmity.graph import SignedDigraph

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def mutual(pairs):
    return {(i, j) for i, j in pairs} | {(j, i) for i, j in pairs}


def neg_graph(n, pairs):
    return SignedDigraph(n, (), mutual(pairs))


def random_signed(seed, n=None, lo=5, hi=30):
    """Signed Erdos-Renyi digraph with random density and reciprocity."""
    rng = np.random.default_rng(seed)
    n = n or int(rng.integers(lo, hi + 1))
    spec = GeneratorSpec("erdos-renyi-signed", n, seed=int(seed),
                         p_pos=float(rng.uniform(0.1, 0.4)), p_neg=float(rng.uniform(0.08, 0.35)),
                         r_pos=float(rng.uniform(0, 1)), r_neg=float(rng.uniform(0, 1)))
    return generate(spec)


@st.composite
def undirected_graphs(draw, min_n=3, max_n=12):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    chosen = [p for p, keep in zip(pairs, mask) if keep]
    if not chosen:
        chosen = [pairs[0]]
    return neg_graph(n, chosen)


@st.composite
def signed_digraphs(draw, min_n=3, max_n=12):
    n = draw(st.integers(min_n, max_n))
    ordered = [(i, j) for i in range(n) for j in range(n) if i != j]
    pos = draw(st.lists(st.booleans(), min_size=len(ordered), max_size=len(ordered)))
    neg = draw(st.lists(st.booleans(), min_size=len(ordered), max_size=len(ordered)))
    P = {e for e, k in zip(ordered, pos) if k}
    N = {e for e, k in zip(ordered, neg) if k}
    if not P:
        P = {ordered[0]}
    if not N:
        N = {ordered[-1]}
    return SignedDigraph(n, P, N)


@pytest.fixture
def fixtures():
    from enmity.generators import reference_fixtures
    return reference_fixtures()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
