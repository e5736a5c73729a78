import itertools

import numpy as np
import pytest

from conftest import neg_graph
from enmity.generators import regular_pairs, star_pairs
from enmity.graph import make_view
from enmity.paradox import delta_local_same
from enmity.rewire import maximize_strength


def exhaustive_best_sum_sq(n, m):
    """Largest sum of squared degrees over all simple graphs with n nodes, m edges, no isolated node."""
    pairs = list(itertools.combinations(range(n), 2))
    P = np.array(pairs)
    inc = np.zeros((len(pairs), n), dtype=np.int8)
    inc[np.arange(len(pairs)), P[:, 0]] = 1
    inc[np.arange(len(pairs)), P[:, 1]] = 1
    best, best_seqs = -1, set()
    combos = itertools.combinations(range(len(pairs)), m)
    while True:
        chunk = np.fromiter(itertools.chain.from_iterable(itertools.islice(combos, 200_000)), dtype=np.int16)
        if chunk.size == 0:
            break
        chunk = chunk.reshape(-1, m)
        deg = inc[chunk].sum(axis=1, dtype=np.int16)
        ok = deg.min(axis=1) > 0
        score = (deg.astype(np.int32) ** 2).sum(axis=1)
        score[~ok] = -1
        top = int(score.max())
        if top > best:
            best, best_seqs = top, set()
        if top == best:
            for row in deg[score == best]:
                best_seqs.add(tuple(sorted(row.tolist(), reverse=True)))
    return best, best_seqs


def edge_set(v):
    return set(v.original_edges())


def test_exhaustive_oracle_small():
    # n = 5, m = 5: star on 5 nodes plus one extra edge
    best, seqs = exhaustive_best_sum_sq(5, 5)
    assert best == 16 + 4 + 4 + 1 + 1
    assert seqs == {(4, 2, 2, 1, 1)}


@pytest.mark.parametrize("seed", range(8))
def test_ring_global(seed):
    v = make_view(neg_graph(8, regular_pairs(8, 2)))
    final, trace = maximize_strength(v, "global", budget=100, seed=seed)
    assert final.edge_count == v.edge_count
    assert trace.stop_reason == "no-improving-move"
    ks = [s.H_var for s in trace.steps]
    assert all(b > a for a, b in zip(ks, ks[1:]))
    strengths = [abs(s.delta_g) for s in trace.steps]
    assert all(b > a for a, b in zip(strengths, strengths[1:]))
    assert trace.steps[-1].H_var > 0
    k = np.asarray(final.adjacency.sum(axis=1)).ravel()
    assert sorted(k.tolist(), reverse=True) == [7, 2, 2, 1, 1, 1, 1, 1]


def test_ring_reaches_exhaustive_maximum():
    best, seqs = exhaustive_best_sum_sq(8, 8)
    v = make_view(neg_graph(8, regular_pairs(8, 2)))
    final, _ = maximize_strength(v, "global", budget=100, seed=0)
    k = np.asarray(final.adjacency.sum(axis=1)).ravel()
    assert int((k ** 2).sum()) == best
    assert tuple(sorted(k.tolist(), reverse=True)) in seqs


def test_star_has_no_improving_move():
    v = make_view(neg_graph(8, star_pairs(8)))
    final, trace = maximize_strength(v, "global", budget=10, seed=0)
    assert trace.accepted == 0
    assert trace.stop_reason == "no-improving-move"
    assert edge_set(final) == edge_set(v)


def test_budget_stop_and_validation():
    v = make_view(neg_graph(8, regular_pairs(8, 2)))
    _, trace = maximize_strength(v, "global", budget=2, seed=0)
    assert trace.accepted == 2 and trace.stop_reason == "budget"
    with pytest.raises(ValueError):
        maximize_strength(v, "global", budget=0)
    with pytest.raises(ValueError):
        maximize_strength(v, "sideways")


def test_simplicity_and_count_every_step():
    v = make_view(neg_graph(10, regular_pairs(10, 4)))
    start = delta_local_same(v).delta_g
    final, trace = maximize_strength(v, "global", budget=500, seed=3)
    A = final.adjacency.toarray()
    assert (A == A.T).all() and A.diagonal().sum() == 0 and A.max() == 1
    assert final.edge_count == v.edge_count
    assert abs(trace.steps[-1].delta_g) >= abs(start) - 1e-12
    assert np.asarray(A.sum(axis=1)).min() >= 1


def test_local_objective_monotone():
    v = make_view(neg_graph(9, regular_pairs(9, 2) + [(0, 4)]))
    final, trace = maximize_strength(v, "local", budget=30, seed=1)
    vals = [abs(s.delta_l) for s in trace.steps]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert final.edge_count == v.edge_count
    assert trace.accepted >= 1


def test_trace_csv():
    v = make_view(neg_graph(6, regular_pairs(6, 2)))
    _, trace = maximize_strength(v, "global", budget=3, seed=0)
    lines = trace.to_csv().splitlines()
    assert lines[0] == "step,move,delta_g,delta_l,H_var,H_star"
    assert len(lines) == 1 + len(trace.steps)
    assert lines[1].startswith("0,start,")
