"""Signed directed graphs, single-sign views, degrees and walk counts.

A :class:`SignedDigraph` is the raw ingested object: ``n`` nodes and two
sets of ordered pairs, one per sign.  Every analysis works on a
:class:`GraphView`, which picks one sign and one of three modes:

``symmetrized``
    undirected, ``{i, j}`` is an edge if either direction was reported
``reciprocated``
    undirected, ``{i, j}`` is an edge only if both directions were reported
``directed``
    the reported directions as they are

Views re-index their nodes densely; ``view.retained[v]`` gives the original
node id of view node ``v``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
import scipy.sparse as sp

from .errors import EmptyWorldError, StructuralError, WalkOverflowError

MODES = ("symmetrized", "reciprocated", "directed")

# walk counts are int64; stop before a product could exceed this
_WALK_LIMIT = 2**62

_SIGN_ALIASES = {
    "+": "+", "pos": "+", "positive": "+", "+1": "+", "1": "+", 1: "+",
    "-": "-", "neg": "-", "negative": "-", "-1": "-", -1: "-",
}


def as_sign(sign) -> str:
    """Normalize a sign token to ``"+"`` or ``"-"``."""
    try:
        return _SIGN_ALIASES[sign]
    except (KeyError, TypeError):
        raise ValueError(f"unknown sign {sign!r}") from None


def other_sign(sign) -> str:
    return "-" if as_sign(sign) == "+" else "+"


def _as_mode(mode):
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    return mode


def _edge_set(edges) -> frozenset:
    return frozenset((int(i), int(j)) for i, j in edges)


def _check_edges(n, edges, sign):
    for i, j in edges:
        if i == j:
            raise StructuralError(f"self-loop in {sign} edges", (i, j))
        if not (0 <= i < n and 0 <= j < n):
            raise StructuralError(f"endpoint out of range [0, {n}) in {sign} edges", (i, j))


@dataclass(frozen=True)
class SignedDigraph:
    """Node set plus positive and negative directed edge sets.

    A pair may appear in both edge sets; it is then kept in both worlds.
    """

    n: int
    pos_edges: frozenset = frozenset()
    neg_edges: frozenset = frozenset()
    labels: tuple | None = None

    def __post_init__(self):
        if self.n < 0:
            raise StructuralError("negative node count", self.n)
        object.__setattr__(self, "pos_edges", _edge_set(self.pos_edges))
        object.__setattr__(self, "neg_edges", _edge_set(self.neg_edges))
        _check_edges(self.n, self.pos_edges, "positive")
        _check_edges(self.n, self.neg_edges, "negative")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.n:
                raise StructuralError(f"{len(labels)} labels for {self.n} nodes")
            object.__setattr__(self, "labels", labels)

    def edges(self, sign) -> frozenset:
        return self.pos_edges if as_sign(sign) == "+" else self.neg_edges

    def label(self, i):
        return self.labels[i] if self.labels is not None else i

    def label_index(self) -> dict:
        """Map external label -> node id."""
        return {self.label(i): i for i in range(self.n)}

    def adjacency(self, sign) -> sp.csr_array:
        """Directed 0/1 adjacency of one sign over all ``n`` nodes."""
        return _adjacency(self.n, self.edges(sign))

    def subgraph(self, nodes: Iterable[int]) -> "SignedDigraph":
        """Induced subgraph on ``nodes`` (re-indexed in sorted order, labels kept)."""
        keep = sorted(set(int(v) for v in nodes))
        index = {v: i for i, v in enumerate(keep)}

        def restrict(edges):
            return {(index[i], index[j]) for i, j in edges if i in index and j in index}

        return SignedDigraph(
            len(keep),
            restrict(self.pos_edges),
            restrict(self.neg_edges),
            tuple(self.label(v) for v in keep),
        )


def _adjacency(n, edges) -> sp.csr_array:
    if edges:
        ij = np.array(sorted(edges), dtype=np.int64)
        rows, cols = ij[:, 0], ij[:, 1]
    else:
        rows = cols = np.zeros(0, dtype=np.int64)
    data = np.ones(len(rows), dtype=np.int64)
    return sp.csr_array((data, (rows, cols)), shape=(n, n))


def validate(g: SignedDigraph) -> dict:
    """Diagnostics for ``g``; raises :class:`StructuralError` on malformed input.

    Reports node and edge counts per sign, the number of ordered pairs that
    carry both signs, and the fraction of each sign's edges whose reverse is
    also present (``None`` when that sign has no edges).
    """
    _check_edges(g.n, g.pos_edges, "positive")
    _check_edges(g.n, g.neg_edges, "negative")
    out = {
        "nodes": g.n,
        "positive_edges": len(g.pos_edges),
        "negative_edges": len(g.neg_edges),
        "overlapping_pairs": len(g.pos_edges & g.neg_edges),
    }
    for name, edges in (("positive", g.pos_edges), ("negative", g.neg_edges)):
        mutual = sum(1 for i, j in edges if (j, i) in edges)
        out[f"{name}_reciprocated_edges"] = mutual
        out[f"{name}_reciprocated_fraction"] = mutual / len(edges) if edges else None
    return out


@dataclass(frozen=True)
class GraphView:
    """One sign of a signed graph under one mode, densely re-indexed.

    ``adjacency`` is a 0/1 int64 CSR matrix, symmetric unless ``mode`` is
    ``"directed"``.  ``retained`` maps view node -> original node id.
    """

    adjacency: sp.csr_array
    mode: str
    sign: str
    retained: np.ndarray
    n_source: int = field(default=-1)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    n_effective = n

    @property
    def directed(self) -> bool:
        return self.mode == "directed"

    @property
    def name(self) -> str:
        return f"{self.mode}[{self.sign}]"

    @property
    def edge_count(self) -> int:
        nnz = int(self.adjacency.nnz)
        return nnz if self.directed else nnz // 2

    def edge_list(self) -> list[tuple[int, int]]:
        """Edges in view indices; undirected edges listed once with ``i < j``."""
        coo = self.adjacency.tocoo()
        pairs = zip(coo.row.tolist(), coo.col.tolist())
        if self.directed:
            return sorted(pairs)
        return sorted((i, j) for i, j in pairs if i < j)

    def original_edges(self) -> set[tuple[int, int]]:
        return {(int(self.retained[i]), int(self.retained[j])) for i, j in self.edge_list()}

    def transpose(self) -> "GraphView":
        if not self.directed:
            return self
        return GraphView(self.adjacency.T.tocsr(), self.mode, self.sign, self.retained, self.n_source)

    def position(self) -> dict[int, int]:
        """Map original node id -> view index."""
        return {int(v): i for i, v in enumerate(self.retained)}


def view_from_adjacency(adjacency, mode="symmetrized", sign="-", retained=None) -> GraphView:
    """Wrap an existing 0/1 adjacency (dense or sparse) as a view."""
    A = sp.csr_array(adjacency, dtype=np.int64)
    A.data[:] = 1
    A.eliminate_zeros()
    A.sort_indices()
    n = A.shape[0]
    if retained is None:
        retained = np.arange(n)
    mode = _as_mode(mode)
    if mode != "directed" and (A != A.T).nnz:
        raise StructuralError("undirected view needs a symmetric adjacency")
    if A.diagonal().any():
        raise StructuralError("self-loop in adjacency", int(np.flatnonzero(A.diagonal())[0]))
    return GraphView(A, mode, as_sign(sign), np.asarray(retained, dtype=np.int64), n)


def make_view(g: SignedDigraph, sign="-", mode="symmetrized", drop_isolated=True) -> GraphView:
    """Single-sign view of ``g``.

    With ``drop_isolated`` nodes of zero degree in the resulting adjacency
    (in + out for directed views) are removed.  Raises
    :class:`EmptyWorldError` when the view has no edges.
    """
    sign = as_sign(sign)
    mode = _as_mode(mode)
    D = g.adjacency(sign)
    if mode == "symmetrized":
        A = D + D.T
        A.data[:] = 1
    elif mode == "reciprocated":
        A = D.multiply(D.T)
    else:
        A = D
    A = sp.csr_array(A, dtype=np.int64)
    A.eliminate_zeros()
    A.sort_indices()
    if A.nnz == 0:
        raise EmptyWorldError(f"{mode}[{sign}]")
    retained = np.arange(g.n, dtype=np.int64)
    if drop_isolated:
        touched = (A.sum(axis=1) + A.sum(axis=0)) > 0
        retained = retained[touched]
        A = A[retained][:, retained]
    return GraphView(sp.csr_array(A), mode, sign, retained, g.n)


@dataclass(frozen=True)
class DegreeView:
    """Integer degree vectors indexed by view node.

    For undirected views ``k_in`` and ``k_out`` are both the degree ``k``.
    """

    k_in: np.ndarray
    k_out: np.ndarray
    directed: bool = False

    @property
    def k(self) -> np.ndarray:
        if self.directed:
            raise AttributeError("directed degree view has no single degree; use k_in / k_out")
        return self.k_out


def degrees(v: GraphView) -> DegreeView:
    k_out = np.asarray(v.adjacency.sum(axis=1), dtype=np.int64).ravel()
    if not v.directed:
        return DegreeView(k_out, k_out, False)
    k_in = np.asarray(v.adjacency.sum(axis=0), dtype=np.int64).ravel()
    return DegreeView(k_in, k_out, True)


def cross_degrees(g: SignedDigraph, v: GraphView, sign) -> DegreeView:
    """Degrees of sign ``sign`` (same mode as ``v``) for the nodes retained in ``v``.

    Nodes with no edge of that sign get degree 0.  This is the counted
    quantity of the mixed-world variants.
    """
    D = g.adjacency(sign)
    if v.mode == "symmetrized":
        A = D + D.T
        A.data[:] = 1
    elif v.mode == "reciprocated":
        A = D.multiply(D.T)
    else:
        A = D
    A = sp.csr_array(A, dtype=np.int64)
    A.eliminate_zeros()
    k_out = np.asarray(A.sum(axis=1), dtype=np.int64).ravel()[v.retained]
    if v.directed:
        k_in = np.asarray(A.sum(axis=0), dtype=np.int64).ravel()[v.retained]
        return DegreeView(k_in, k_out, True)
    return DegreeView(k_out, k_out, False)


def walk_vector(v: GraphView, ell: int, start=None) -> np.ndarray:
    """``A^ell @ start`` by repeated sparse products in int64.

    With the default all-ones ``start`` entry ``i`` is the number of walks of
    length ``ell`` leaving ``i``.  Raises :class:`WalkOverflowError` before any
    product could leave the exact int64 range.
    """
    if ell < 1:
        raise ValueError("walk length must be >= 1")
    A = v.adjacency
    x = np.ones(v.n, dtype=np.int64) if start is None else np.asarray(start, dtype=np.int64)
    dmax = int(A.sum(axis=1).max()) if v.n else 0
    for step in range(ell):
        if dmax and int(np.abs(x).max(initial=0)) > _WALK_LIMIT // dmax:
            raise WalkOverflowError(f"walk counts overflow int64 at length {step + 1}")
        x = A @ x
    return np.asarray(x, dtype=np.int64)


def walk_total(v: GraphView, ell: int) -> int:
    """``1^T A^ell 1`` as a Python integer."""
    return int(sum(int(c) for c in walk_vector(v, ell)))
