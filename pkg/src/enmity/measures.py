"""Topological measures of a single-sign undirected view.

Heterogeneity (assortativity, star-likeness, degree variance, degree
diversity), triadic closure, normalized betweenness, reciprocity of the
underlying digraph, and the per-node distance embedding used for plotting.
"""
from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import csgraph
from scipy.special import expit

from .errors import EmptyWorldError
from .graph import GraphView, SignedDigraph, as_sign, degrees
from .inversity import Undefined, inversity_same


def _require_undirected(v: GraphView):
    if v.directed:
        raise ValueError(f"{v.name}: measure defined for undirected views only")


def assortativity(v: GraphView) -> float | Undefined:
    """Degree assortativity: Pearson correlation of endpoint degrees over both edge orientations."""
    _require_undirected(v)
    k = degrees(v).k.astype(float)
    coo = v.adjacency.tocoo()
    a, b = k[coo.row], k[coo.col]
    if len(a) < 4:  # fewer than two edges
        return Undefined("fewer than two edges")
    a_c = a - a.mean()
    b_c = b - b.mean()
    var = float(a_c @ a_c)
    if var <= 1e-12 * max(1.0, float(a @ a)):
        return Undefined("all edge endpoints have the same degree")
    return float(min(1.0, max(-1.0, (a_c @ b_c) / var)))


def estrada_index(v: GraphView) -> float:
    """Star-likeness: sum over edges of ``(k_i^-1/2 - k_j^-1/2)^2`` scaled by ``n - 2 sqrt(n-1)``.

    Equals 1 on stars and 0 on regular graphs.
    """
    _require_undirected(v)
    n = v.n
    if n < 3:
        raise ValueError("star-likeness needs at least 3 nodes")
    k = degrees(v).k.astype(float)
    r = np.zeros(n)
    r[k > 0] = k[k > 0] ** -0.5
    edges = np.array(v.edge_list(), dtype=np.int64).reshape(-1, 2)
    diff = r[edges[:, 0]] - r[edges[:, 1]]
    # n - 2 sqrt(n - 1) written without cancellation; clip rounding excess above 1
    value = math.fsum((diff * diff).tolist()) / (math.sqrt(n - 1.0) - 1.0) ** 2
    return min(value, 1.0) if value < 1.0 + 1e-12 else value


def degree_variance(v: GraphView) -> float:
    k = degrees(v).k
    n = len(k)
    # exact integer numerator
    s1, s2 = int(k.sum()), int((k.astype(object) ** 2).sum())
    return (n * s2 - s1 * s1) / (n * n)


def degree_diversity(v: GraphView) -> float:
    """``h / h_het`` with ``h^2 = (1/n) sum_k (1 - P(k))^2`` over observed degrees.

    ``h_het^2 = 1 - 3/n + (n + 2)/n^3`` is the value of ``h^2`` when degrees
    are as spread as possible (two nodes share one value, the rest distinct),
    so the score is 1 there and 0 on regular graphs.
    """
    k = degrees(v).k
    n = len(k)
    if n < 2:
        raise ValueError("degree diversity needs at least 2 nodes")
    counts = Counter(k.tolist())
    h2 = sum((1 - Fraction(c, n)) ** 2 for c in counts.values()) / n
    h_het2 = 1 - Fraction(3, n) + Fraction(n + 2, n**3)
    return math.sqrt(h2 / h_het2)


def _triads(v: GraphView):
    A = v.adjacency
    k = degrees(v).k
    closed = np.asarray((A @ A).multiply(A).sum(axis=1)).ravel().astype(np.int64)  # = diag(A^3)
    pairs = k * (k - 1)
    return closed, pairs


def transitivity(v: GraphView) -> float:
    """Three times the triangles over connected triples."""
    _require_undirected(v)
    closed, pairs = _triads(v)
    total = int(pairs.sum())
    return int(closed.sum()) / total if total else 0.0


def local_clustering(v: GraphView) -> np.ndarray:
    closed, pairs = _triads(v)
    out = np.zeros(v.n)
    ok = pairs > 0
    out[ok] = closed[ok] / pairs[ok]
    return out


def clustering_mean(v: GraphView) -> float:
    """Mean local clustering; nodes of degree below 2 count as 0."""
    _require_undirected(v)
    closed, pairs = _triads(v)
    total = sum((Fraction(int(c), int(p)) for c, p in zip(closed, pairs) if p), Fraction(0))
    return float(total / v.n)


def betweenness_normalized(v: GraphView) -> np.ndarray:
    """Shortest-path betweenness over unordered pairs divided by ``(n-1)(n-2)/2``."""
    _require_undirected(v)
    n = v.n
    if n < 3:
        raise ValueError("normalized betweenness needs at least 3 nodes")
    indptr, indices = v.adjacency.indptr, v.adjacency.indices
    bc = np.zeros(n)
    for s in range(n):
        # Brandes accumulation from source s
        order = []
        preds = [[] for _ in range(n)]
        sigma = np.zeros(n)
        sigma[s] = 1
        dist = np.full(n, -1)
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in indices[indptr[u]:indptr[u + 1]]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
                if dist[w] == dist[u] + 1:
                    sigma[w] += sigma[u]
                    preds[w].append(u)
        delta = np.zeros(n)
        for w in reversed(order):
            for u in preds[w]:
                delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w])
            if w != s:
                bc[w] += delta[w]
    # every unordered pair was counted from both ends
    return bc / 2.0 / ((n - 1) * (n - 2) / 2.0)


def reciprocity(g: SignedDigraph, sign) -> float:
    """Fraction of directed edges of one sign whose reverse edge is also present."""
    edges = g.edges(as_sign(sign))
    if not edges:
        raise EmptyWorldError(f"directed[{as_sign(sign)}]")
    return sum(1 for i, j in edges if (j, i) in edges) / len(edges)


@dataclass(frozen=True)
class NodeEmbedding:
    """Per-node distance statistics normalized by the component's diameter.

    Singleton components have ``nan`` entries and ``singleton`` set.
    """

    mean_distance: np.ndarray
    sd_distance: np.ndarray
    component: np.ndarray
    singleton: np.ndarray
    diameter: np.ndarray  # per node, of its component


def node_location_embedding(v: GraphView) -> NodeEmbedding:
    _require_undirected(v)
    n = v.n
    if n == 0:
        raise ValueError("empty view")
    n_comp, comp = csgraph.connected_components(v.adjacency, directed=False)
    dist = csgraph.shortest_path(v.adjacency, method="D", directed=False, unweighted=True)
    mean = np.full(n, np.nan)
    sd = np.full(n, np.nan)
    diam = np.zeros(n)
    sizes = np.bincount(comp, minlength=n_comp)
    for c in range(n_comp):
        members = np.flatnonzero(comp == c)
        if len(members) == 1:
            continue
        block = dist[np.ix_(members, members)]
        d = block.max()
        diam[members] = d
        for row, u in zip(block, members):
            others = np.delete(row, np.flatnonzero(members == u)[0])
            mean[u] = others.mean() / d
            sd[u] = others.std() / d
    return NodeEmbedding(mean, sd, comp, sizes[comp] == 1, diam)


def sigmoid(x):
    return expit(x)


def signed_pseudo_log(x):
    """``sign(x) * log10(1 + |x|)``."""
    x = np.asarray(x, dtype=float)
    out = np.sign(x) * np.log10(1.0 + np.abs(x))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class HeterogeneityProfile:
    assortativity: float | Undefined
    estrada: float | None
    degree_variance: float
    degree_diversity: float | None
    inversity: float | Undefined
    transitivity: float
    mean_clustering: float
    normalized_betweenness: np.ndarray | None
    reciprocity: float | None

    def as_dict(self) -> dict:
        def clean(val):
            if isinstance(val, Undefined):
                return None
            if isinstance(val, np.ndarray):
                return [float(t) for t in val]
            return val

        return {k: clean(val) for k, val in self.__dict__.items()}


def profile(v: GraphView, g: SignedDigraph | None = None) -> HeterogeneityProfile:
    """All measures for one view; ``g`` supplies the digraph for reciprocity."""
    _require_undirected(v)
    big = v.n >= 3
    return HeterogeneityProfile(
        assortativity=assortativity(v),
        estrada=estrada_index(v) if big else None,
        degree_variance=degree_variance(v),
        degree_diversity=degree_diversity(v) if v.n >= 2 else None,
        inversity=inversity_same(v),
        transitivity=transitivity(v),
        mean_clustering=clustering_mean(v),
        normalized_betweenness=betweenness_normalized(v) if big else None,
        reciprocity=reciprocity(g, v.sign) if g is not None else None,
    )
