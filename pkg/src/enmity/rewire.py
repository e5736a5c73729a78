"""Edge-count-preserving hill climbing toward maximal paradox strength.

Two move kinds on a simple undirected graph:

reattach ``(u, w) -> (u, x)``
    detach the ``w`` end of edge ``{u, w}`` and attach it to ``x``
swap ``(a, b), (c, d) -> (a, d), (c, b)``
    cross-rewire two edges; every degree is kept

The global objective is ``|delta_g|``.  At fixed ``n`` and edge count it is
a monotone function of the sum of squared degrees (and of the variance over
mean degree), and a reattachment changes that sum by ``2 (k_x - k_w + 1)``.
Swaps never change it, so they are only offered to the local objective,
which scores ``|delta_l|`` exactly.

A move is legal when the graph stays simple, no node loses its last edge,
and no two-node component (a lone edge) is split off; such a component
could never be moved again without isolating a node.  Connectivity is not
otherwise preserved.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graph import GraphView, view_from_adjacency
from .measures import degree_variance, estrada_index
from .paradox import delta_local_same

OBJECTIVES = ("global", "local")
TRACE_FIELDS = ("step", "move", "delta_g", "delta_l", "H_var", "H_star")


@dataclass(frozen=True)
class RewireStep:
    move: str
    delta_g: float
    delta_l: float
    H_var: float
    H_star: float


@dataclass
class RewireTrace:
    """Snapshots after each accepted move; ``steps[0]`` is the starting graph."""

    objective: str
    steps: list = field(default_factory=list)
    accepted: int = 0
    rejected: int = 0
    stop_reason: str = ""

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TRACE_FIELDS)
        for i, s in enumerate(self.steps):
            w.writerow([i, s.move, repr(s.delta_g), repr(s.delta_l), repr(s.H_var), repr(s.H_star)])
        return buf.getvalue()


def trace_to_csv(trace: RewireTrace, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(trace.to_csv())


class _Graph:
    """Mutable simple graph on nodes ``0..n-1``."""

    def __init__(self, n, edges):
        self.n = n
        self.nbrs = [set() for _ in range(n)]
        for i, j in edges:
            self.nbrs[i].add(j)
            self.nbrs[j].add(i)

    def deg(self, i):
        return len(self.nbrs[i])

    def edges(self):
        return sorted((i, j) for i in range(self.n) for j in self.nbrs[i] if i < j)

    def sum_sq(self):
        return sum(len(s) ** 2 for s in self.nbrs)

    def local_delta(self):
        total = Fraction(0)
        count = 0
        for i in range(self.n):
            k = len(self.nbrs[i])
            if k:
                total += k - Fraction(sum(len(self.nbrs[j]) for j in self.nbrs[i]), k)
                count += 1
        return total / count

    # -- moves -------------------------------------------------------------

    def _splits_dyad(self, node, lost):
        """Would ``node`` end up as one half of a lone edge after losing neighbor ``lost``?"""
        rest = self.nbrs[node] - {lost}
        if len(rest) != 1:
            return False
        (other,) = rest
        return len(self.nbrs[other]) == 1

    def reattach_legal(self, u, w, x):
        if x == u or x == w or x in self.nbrs[u] or w not in self.nbrs[u]:
            return False
        if self.deg(w) < 2:
            return False
        return not self._splits_dyad(w, u)

    def reattach(self, u, w, x):
        self.nbrs[u].discard(w)
        self.nbrs[w].discard(u)
        self.nbrs[u].add(x)
        self.nbrs[x].add(u)

    def swap_legal(self, a, b, c, d):
        if len({a, b, c, d}) < 4:
            return False
        if b not in self.nbrs[a] or d not in self.nbrs[c]:
            return False
        if d in self.nbrs[a] or b in self.nbrs[c]:
            return False
        # (a, d) or (c, b) as a lone edge
        if self.deg(a) == 1 and self.deg(d) == 1:
            return False
        if self.deg(c) == 1 and self.deg(b) == 1:
            return False
        return True

    def swap(self, a, b, c, d):
        self.nbrs[a].discard(b)
        self.nbrs[b].discard(a)
        self.nbrs[c].discard(d)
        self.nbrs[d].discard(c)
        self.nbrs[a].add(d)
        self.nbrs[d].add(a)
        self.nbrs[c].add(b)
        self.nbrs[b].add(c)

    def candidates(self, with_swaps):
        """All structurally possible moves in lexicographic order."""
        moves = []
        oriented = [(u, w) for u in range(self.n) for w in sorted(self.nbrs[u])]
        for u, w in oriented:
            for x in range(self.n):
                if x != u and x != w and x not in self.nbrs[u]:
                    moves.append(("reattach", u, w, x))
        if with_swaps:
            for idx, (a, b) in enumerate(oriented):
                for c, d in oriented[idx + 1:]:
                    if a < c and len({a, b, c, d}) == 4:
                        moves.append(("swap", a, b, c, d))
        return moves


def _snapshot(G: _Graph, move, mode, sign, retained) -> tuple[RewireStep, GraphView]:
    v = _to_view(G, mode, sign, retained)
    rep = delta_local_same(v)
    h_star = estrada_index(v) if v.n >= 3 else float("nan")
    return RewireStep(move, rep.delta_g, rep.delta_l, degree_variance(v), h_star), v


def _to_view(G: _Graph, mode, sign, retained) -> GraphView:
    A = np.zeros((G.n, G.n), dtype=np.int64)
    for i, j in G.edges():
        A[i, j] = A[j, i] = 1
    return view_from_adjacency(A, mode, sign, retained)


def maximize_strength(v: GraphView, objective="global", budget=1000, seed=0, labels=None):
    """Greedy first-improvement climb; returns ``(final_view, trace)``.

    Each round lists every legal move, shuffles the list with a seeded
    generator, and accepts the first move that strictly improves the
    objective.  The run stops after ``budget`` accepted moves or when no move
    improves.  Moves in the trace name nodes by original id, or by
    ``labels[id]`` when ``labels`` is given.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if v.directed:
        raise ValueError("rewiring works on undirected views")
    rng = np.random.Generator(np.random.PCG64(seed))
    G = _Graph(v.n, v.edge_list())
    trace = RewireTrace(objective)
    step, view = _snapshot(G, "start", v.mode, v.sign, v.retained)
    trace.steps.append(step)

    if objective == "global":
        score = G.sum_sq()
    else:
        score = abs(G.local_delta())

    while trace.accepted < budget:
        moves = G.candidates(with_swaps=objective == "local")
        order = rng.permutation(len(moves))
        chosen = None
        for idx in order:
            move = moves[idx]
            kind, *nodes = move
            if kind == "reattach":
                u, w, x = nodes
                if not G.reattach_legal(u, w, x):
                    trace.rejected += 1
                    continue
                if objective == "global":
                    gain = 2 * (G.deg(x) - G.deg(w) + 1)
                    if gain > 0:
                        chosen, score = move, score + gain
                        G.reattach(u, w, x)
                        break
                    trace.rejected += 1
                    continue
                G.reattach(u, w, x)
                new = abs(G.local_delta())
                if new > score:
                    chosen, score = move, new
                    break
                G.reattach(u, x, w)
            else:
                a, b, c, d = nodes
                if not G.swap_legal(a, b, c, d):
                    trace.rejected += 1
                    continue
                G.swap(a, b, c, d)
                new = abs(G.local_delta())
                if new > score:
                    chosen, score = move, new
                    break
                G.swap(a, d, c, b)
            trace.rejected += 1
        if chosen is None:
            trace.stop_reason = "no-improving-move"
            break
        trace.accepted += 1
        names = [int(v.retained[t]) for t in chosen[1:]]
        if labels is not None:
            names = [labels[t] for t in names]
        label = f"{chosen[0]}:" + "-".join(str(t) for t in names)
        step, view = _snapshot(G, label, v.mode, v.sign, v.retained)
        trace.steps.append(step)
    else:
        trace.stop_reason = "budget"
    return view, trace
