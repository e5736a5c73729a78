import numpy as np
import pytest
from hypothesis import given

from conftest import neg_graph, signed_digraphs
from enmity.errors import EmptyWorldError, StructuralError, WalkOverflowError
from enmity.graph import (
    SignedDigraph,
    cross_degrees,
    degrees,
    make_view,
    validate,
    view_from_adjacency,
    walk_total,
    walk_vector,
)


def test_self_loop_rejected():
    with pytest.raises(StructuralError):
        SignedDigraph(3, {(1, 1)}, ())


def test_endpoint_out_of_range():
    with pytest.raises(StructuralError):
        SignedDigraph(2, (), {(0, 5)})


def test_validate_counts():
    g = SignedDigraph(3, {(0, 1), (1, 0), (0, 2)}, {(0, 1)})
    info = validate(g)
    assert info["positive_edges"] == 3
    assert info["negative_edges"] == 1
    assert info["overlapping_pairs"] == 1
    assert info["positive_reciprocated_fraction"] == pytest.approx(2 / 3)
    assert info["negative_reciprocated_fraction"] == 0.0


def test_modes_on_one_way_and_mutual_ties():
    # 0->1 mutual, 1->2 one way
    g = SignedDigraph(3, (), {(0, 1), (1, 0), (1, 2)})
    sym = make_view(g, "-", "symmetrized")
    rec = make_view(g, "-", "reciprocated")
    dire = make_view(g, "-", "directed")
    assert sym.edge_count == 2
    assert rec.edge_count == 1 and rec.n == 2
    assert dire.edge_count == 3
    assert list(rec.retained) == [0, 1]
    assert sym.original_edges() == {(0, 1), (1, 2)}


def test_keep_isolated():
    g = SignedDigraph(4, (), {(0, 1), (1, 0)})
    assert make_view(g, "-", drop_isolated=True).n == 2
    assert make_view(g, "-", drop_isolated=False).n == 4


def test_empty_world_named():
    g = neg_graph(3, [(0, 1)])
    with pytest.raises(EmptyWorldError) as info:
        make_view(g, "+")
    assert "symmetrized[+]" in str(info.value)


def test_view_from_adjacency_requires_symmetry():
    with pytest.raises(StructuralError):
        view_from_adjacency(np.array([[0, 1], [0, 0]]), "symmetrized")


def test_directed_degrees():
    g = SignedDigraph(3, (), {(0, 2), (1, 2)})
    d = degrees(make_view(g, "-", "directed"))
    assert d.k_in.tolist() == [0, 0, 2]
    assert d.k_out.tolist() == [1, 1, 0]
    with pytest.raises(AttributeError):
        d.k


def test_cross_degrees_align_to_retained():
    g = SignedDigraph(4, {(0, 1), (1, 0)}, {(1, 2), (2, 1), (2, 3), (3, 2)})
    v = make_view(g, "+")
    assert cross_degrees(g, v, "-").k.tolist() == [0, 1]


def test_walks_on_path():
    v = make_view(neg_graph(4, [(0, 1), (1, 2), (2, 3)]))
    assert walk_vector(v, 1).tolist() == [1, 2, 2, 1]
    assert walk_vector(v, 2).tolist() == [2, 3, 3, 2]
    assert walk_total(v, 3) == 16


def test_walk_overflow_detected():
    n = 40
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    v = make_view(neg_graph(n, pairs))
    with pytest.raises(WalkOverflowError):
        walk_vector(v, 13)


@given(signed_digraphs())
def test_symmetrized_contains_reciprocated(g):
    for s in "+-":
        sym = make_view(g, s, "symmetrized", drop_isolated=False)
        try:
            rec = make_view(g, s, "reciprocated", drop_isolated=False)
        except EmptyWorldError:
            continue
        assert (rec.adjacency - rec.adjacency.multiply(sym.adjacency)).nnz == 0


@given(signed_digraphs())
def test_degree_sums(g):
    for s in "+-":
        d = degrees(make_view(g, s, "directed"))
        assert d.k_in.sum() == d.k_out.sum() == len(g.edges(s))
