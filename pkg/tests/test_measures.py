import math
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from conftest import neg_graph, undirected_graphs
from enmity.errors import EmptyWorldError
from enmity.generators import complete_pairs, regular_pairs, star_pairs
from enmity.graph import SignedDigraph, make_view
from enmity.inversity import Undefined
from enmity.measures import (
    assortativity,
    betweenness_normalized,
    clustering_mean,
    degree_diversity,
    degree_variance,
    estrada_index,
    local_clustering,
    node_location_embedding,
    profile,
    reciprocity,
    sigmoid,
    signed_pseudo_log,
    transitivity,
)
from enmity.naive import brute_triads, neighbor_lists


def to_nx(v):
    G = nx.Graph()
    G.add_nodes_from(range(v.n))
    G.add_edges_from(v.edge_list())
    return G


PATH3 = neg_graph(3, [(0, 1), (1, 2)])


def test_path3_battery():
    v = make_view(PATH3)
    assert assortativity(v) == pytest.approx(-1.0)
    assert estrada_index(v) == pytest.approx(1.0, abs=1e-12)
    assert degree_variance(v) == pytest.approx(2 / 9, abs=1e-15)
    assert betweenness_normalized(v).tolist() == [0.0, 1.0, 0.0]


def test_path3_diversity_raw_value():
    # h^2 = 5/27, and at n = 3 the most heterogeneous value is also 5/27
    h2 = Fraction(1, 3) * (Fraction(1, 3) ** 2 + Fraction(2, 3) ** 2)
    assert h2 == Fraction(5, 27)
    assert degree_diversity(make_view(PATH3)) == pytest.approx(1.0, abs=1e-15)


def test_diversity_one_on_maximally_spread_degrees():
    # paw: triangle plus pendant, degrees 3, 2, 2, 1
    paw = neg_graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
    assert degree_diversity(make_view(paw)) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("n,k", [(6, 2), (8, 3), (10, 4), (7, 6)])
def test_regular_graphs_zero_heterogeneity(n, k):
    v = make_view(neg_graph(n, regular_pairs(n, k)))
    assert degree_variance(v) == 0.0
    assert degree_diversity(v) == 0.0
    assert estrada_index(v) == 0.0
    assert isinstance(assortativity(v), Undefined)


@pytest.mark.parametrize("n", range(3, 21))
def test_star_extremes(n):
    v = make_view(neg_graph(n, star_pairs(n)))
    bc = betweenness_normalized(v)
    assert bc[0] == 1.0
    assert np.all(bc[1:] == 0.0)
    assert estrada_index(v) == pytest.approx(1.0, abs=1e-12)
    if n > 3:
        assert assortativity(v) == pytest.approx(-1.0)


def test_star_variance():
    assert degree_variance(make_view(neg_graph(4, star_pairs(4)))) == 0.75


def test_triads_small_cases():
    k3 = make_view(neg_graph(3, complete_pairs(3)))
    assert transitivity(k3) == 1.0 and clustering_mean(k3) == 1.0
    star = make_view(neg_graph(5, star_pairs(5)))
    assert transitivity(star) == 0.0 and clustering_mean(star) == 0.0


def test_k4_minus_edge():
    pairs = [p for p in complete_pairs(4) if p != (2, 3)]
    v = make_view(neg_graph(4, pairs))
    assert transitivity(v) == 0.75
    # nodes 0 and 1 have clustering 2/3, nodes 2 and 3 have 1
    assert local_clustering(v).tolist() == pytest.approx([2 / 3, 2 / 3, 1.0, 1.0])
    assert clustering_mean(v) == pytest.approx(5 / 6, abs=1e-15)


@given(undirected_graphs(max_n=15))
def test_triads_match_enumeration(g):
    v = make_view(g, drop_isolated=False)
    nodes, nbrs, _ = neighbor_lists(g, "-", "symmetrized", drop_isolated=False)
    closed, connected, local = brute_triads(nbrs, g.n)
    expect_t = closed / connected if connected else 0.0
    assert transitivity(v) == expect_t
    assert clustering_mean(v) == float(sum(local, Fraction(0)) / g.n)


@given(undirected_graphs(max_n=14))
def test_against_networkx(g):
    v = make_view(g)
    G = to_nx(v)
    if v.n >= 3:
        ours = betweenness_normalized(v)
        ref = nx.betweenness_centrality(G, normalized=True)
        assert ours == pytest.approx([ref[i] for i in range(v.n)], abs=1e-12)
        assert np.all((ours >= 0) & (ours <= 1 + 1e-12))
        assert 0.0 <= estrada_index(v)
    assert transitivity(v) == pytest.approx(nx.transitivity(G), abs=1e-12)
    assert clustering_mean(v) == pytest.approx(nx.average_clustering(G), abs=1e-12)
    r = assortativity(v)
    if not isinstance(r, Undefined):
        with np.errstate(all="ignore"):
            ref = nx.degree_assortativity_coefficient(G)
        if not math.isnan(ref):
            assert r == pytest.approx(ref, abs=1e-9)


def test_reciprocity():
    assert reciprocity(SignedDigraph(2, (), {(0, 1), (1, 0)}), "-") == 1.0
    assert reciprocity(SignedDigraph(2, (), {(0, 1)}), "-") == 0.0
    assert reciprocity(SignedDigraph(3, (), {(0, 1), (1, 0), (0, 2)}), "-") == pytest.approx(2 / 3)
    with pytest.raises(EmptyWorldError):
        reciprocity(SignedDigraph(2, (), {(0, 1)}), "+")


def test_embedding_examples():
    emb = node_location_embedding(make_view(PATH3))
    assert emb.mean_distance[1] == 0.5
    assert emb.sd_distance[1] == 0.0
    assert emb.mean_distance[0] == pytest.approx(0.75)
    star = node_location_embedding(make_view(neg_graph(5, star_pairs(5))))
    assert star.mean_distance[0] == 0.5 and star.sd_distance[0] == 0.0
    kn = node_location_embedding(make_view(neg_graph(5, complete_pairs(5))))
    assert np.all(kn.mean_distance == 1.0) and np.all(kn.sd_distance == 0.0)


def test_embedding_flags_singletons():
    g = neg_graph(5, [(0, 1), (1, 2)])
    emb = node_location_embedding(make_view(g, drop_isolated=False))
    assert emb.singleton.tolist() == [False, False, False, True, True]
    assert np.isnan(emb.mean_distance[3])


def _floyd(A):
    n = len(A)
    D = np.where(A > 0, 1.0, np.inf)
    np.fill_diagonal(D, 0)
    for k in range(n):
        D = np.minimum(D, D[:, [k]] + D[[k], :])
    return D


@given(undirected_graphs(max_n=12))
def test_embedding_bfs_equals_dense(g):
    v = make_view(g)
    emb = node_location_embedding(v)
    D = _floyd(v.adjacency.toarray())
    for u in range(v.n):
        row = D[u]
        reach = np.isfinite(row)
        reach[u] = False
        if not reach.any():
            assert emb.singleton[u]
            continue
        comp = np.isfinite(row)
        diam = max(D[np.ix_(comp, comp)].max(), 1)
        assert emb.mean_distance[u] == row[reach].mean() / diam
        assert emb.sd_distance[u] == row[reach].std() / diam
        assert 0 < emb.mean_distance[u] <= 1


def test_transforms():
    assert sigmoid(0) == 0.5
    assert signed_pseudo_log(0) == 0.0
    assert signed_pseudo_log(-99) == -2.0
    assert signed_pseudo_log(99) == 2.0
    assert signed_pseudo_log(np.array([-9.0, 0.0, 9.0])).tolist() == [-1.0, 0.0, 1.0]


def test_profile_serializes_undefined_as_null():
    ring = make_view(neg_graph(6, regular_pairs(6, 2)))
    d = profile(ring).as_dict()
    assert d["inversity"] is None and d["assortativity"] is None
    assert d["degree_variance"] == 0.0
    assert d["reciprocity"] is None
