"""Reference implementations with plain loops and exact fractions.

Nothing here touches sparse matrices: neighbor lists are rebuilt from the
raw edge sets and every delta is accumulated as a :class:`fractions.Fraction`.
The oracle compares these against the matrix code.
"""
from __future__ import annotations

from fractions import Fraction

from .graph import SignedDigraph, as_sign
from .paradox import ParadoxVariant, parse_case


def neighbor_lists(g: SignedDigraph, sign, mode, drop_isolated=True):
    """``(nodes, out_nbrs, in_nbrs)`` for one sign and mode.

    For undirected modes both maps are the same neighbor sets.
    """
    edges = g.edges(as_sign(sign))
    out = {i: set() for i in range(g.n)}
    inn = {i: set() for i in range(g.n)}
    for i, j in edges:
        if mode == "directed":
            out[i].add(j)
            inn[j].add(i)
        elif mode == "symmetrized" or (j, i) in edges:
            out[i].add(j)
            out[j].add(i)
    if mode != "directed":
        inn = out
    nodes = [i for i in range(g.n) if not drop_isolated or out[i] or inn[i]]
    return nodes, out, inn


def _finish(nodes, x, looked_at, norm):
    """Global and local delta from per-node lists of looked-at values."""
    n = len(nodes)
    total_w = sum(len(looked_at[i]) for i in nodes)
    weighted = sum(sum(looked_at[i], Fraction(0)) for i in nodes)
    delta_g = sum((x[i] for i in nodes), Fraction(0)) / n - weighted / total_w
    per_node = {}
    for i in nodes:
        if norm[i] > 0:
            per_node[i] = x[i] - sum(looked_at[i], Fraction(0)) / norm[i]
    delta_l = sum(per_node.values(), Fraction(0)) / len(per_node)
    return delta_g, delta_l, per_node


def _walk_endpoints(nbrs, start, ell):
    """Multiset of endpoints of all length-``ell`` walks from ``start`` as {node: count}."""
    frontier = {start: 1}
    for _ in range(ell):
        nxt = {}
        for u, c in frontier.items():
            for w in nbrs[u]:
                nxt[w] = nxt.get(w, 0) + c
        frontier = nxt
    return frontier


def naive_delta(g: SignedDigraph, variant: ParadoxVariant, attrs=None, drop_isolated=True):
    """``(delta_g, delta_l, per_node)`` as exact fractions; ``per_node`` keyed by node id."""
    fam = variant.family
    if fam.startswith("directed"):
        nodes, out, inn = neighbor_lists(g, variant.walk, "directed", drop_isolated)
        nbrs = inn if variant.role == "in-w" else out
        if fam == "directed-same":
            src = inn if variant.measured == "in" else out
            x = {i: Fraction(len(src[i])) for i in nodes}
        elif fam == "directed-mixed":
            _, o2, i2 = neighbor_lists(g, variant.measured[0], "directed", False)
            src = i2 if variant.measured[1:] == "in" else o2
            x = {i: Fraction(len(src[i])) for i in nodes}
        else:
            values = attrs[variant.measured].values
            x = {i: Fraction(values[i]) for i in nodes}
        looked = {i: [x[j] for j in nbrs[i]] for i in nodes}
        norm = {i: len(nbrs[i]) for i in nodes}
        return _finish(nodes, x, looked, norm)

    nodes, nbrs, _ = neighbor_lists(g, variant.walk, variant.mode, drop_isolated)
    k = {i: Fraction(len(nbrs[i])) for i in nodes}
    if fam == "same":
        x = k
    elif fam == "mixed":
        _, other, _ = neighbor_lists(g, variant.measured, variant.mode, False)
        x = {i: Fraction(len(other[i])) for i in nodes}
    elif fam == "generalized":
        values = attrs[variant.measured].values
        x = {i: Fraction(values[i]) for i in nodes}
    else:
        # higher order: each node looks at the degrees of its ell-walk endpoints,
        # the local mean is divided by its own degree
        ell = variant.order
        looked = {}
        for i in nodes:
            ends = _walk_endpoints(nbrs, i, ell)
            looked[i] = [k[j] for j, c in ends.items() for _ in range(c)]
        return _finish(nodes, k, looked, {i: len(nbrs[i]) for i in nodes})
    looked = {i: [x[j] for j in nbrs[i]] for i in nodes}
    return _finish(nodes, x, looked, {i: len(nbrs[i]) for i in nodes})


def directed_case_variant(sign, case) -> ParadoxVariant:
    role, measured = parse_case(case)
    return ParadoxVariant("directed-same", as_sign(sign), measured, role=role, mode="directed")


def incidences(g: SignedDigraph, variant: ParadoxVariant, attrs=None, drop_isolated=True):
    """Explicit list of ``(x_j, 1 / norm_i)`` pairs for the gap identity."""
    fam = variant.family
    if fam.startswith("directed"):
        nodes, out, inn = neighbor_lists(g, variant.walk, "directed", drop_isolated)
        nbrs = inn if variant.role == "in-w" else out
        if fam == "directed-same":
            src = inn if variant.measured == "in" else out
            x = {i: float(len(src[i])) for i in nodes}
        elif fam == "directed-mixed":
            _, o2, i2 = neighbor_lists(g, variant.measured[0], "directed", False)
            src = i2 if variant.measured[1:] == "in" else o2
            x = {i: float(len(src[i])) for i in nodes}
        else:
            x = {i: attrs[variant.measured].values[i] for i in nodes}
    else:
        nodes, nbrs, _ = neighbor_lists(g, variant.walk, variant.mode, drop_isolated)
        if fam == "same":
            x = {i: float(len(nbrs[i])) for i in nodes}
        elif fam == "mixed":
            _, other, _ = neighbor_lists(g, variant.measured, variant.mode, False)
            x = {i: float(len(other[i])) for i in nodes}
        else:
            x = {i: attrs[variant.measured].values[i] for i in nodes}
    return [(x[j], 1.0 / len(nbrs[i])) for i in nodes for j in sorted(nbrs[i])]


def brute_triads(adj_sets, n):
    """``(closed_triples, connected_triples, per_node_clustering)`` by enumeration."""
    closed = connected = 0
    local = []
    for v in range(n):
        nb = sorted(adj_sets[v])
        pairs = links = 0
        for a in range(len(nb)):
            for b in range(a + 1, len(nb)):
                pairs += 1
                if nb[b] in adj_sets[nb[a]]:
                    links += 1
        connected += pairs
        closed += links
        local.append(Fraction(links, pairs) if pairs else Fraction(0))
    return closed, connected, local
