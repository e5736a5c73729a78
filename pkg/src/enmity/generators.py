"""Synthetic signed networks and the small reference fixtures.

Randomness comes from ``numpy.random.Generator(PCG64(seed))``; for a given
seed the draws below happen in a fixed order, so outputs are reproducible
across platforms and numpy versions that keep PCG64's stream.

Deterministic shapes (star, regular, path, complete) and configuration
graphs are emitted as mutual digraphs: every tie appears in both
directions, so all three view modes see the same undirected graph.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .errors import GenerationError
from .graph import SignedDigraph, as_sign

KINDS = ("erdos-renyi-signed", "configuration-signed", "star", "regular", "path", "complete")
COUPLINGS = ("independent", "comonotone", "antimonotone")


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for :func:`generate`.

    ``erdos-renyi-signed``
        each unordered pair is tied in sign ``s`` with probability ``p_s``;
        a tie is mutual with probability ``r_s``, otherwise one direction is
        picked at random.
    ``configuration-signed``
        degree sequences ``deg_pos``/``deg_neg`` (drawn from a discretized
        Pareto law with exponent ``tail`` when omitted) are realized exactly;
        ``coupling`` decides how the two sequences are paired on nodes.
    ``star``, ``regular``, ``path``, ``complete``
        one world only (``sign``); ``k`` is the degree of ``regular``.
    """

    kind: str
    n: int
    seed: int = 0
    sign: str = "-"
    k: int = 2
    p_pos: float = 0.0
    p_neg: float = 0.0
    r_pos: float = 0.0
    r_neg: float = 0.0
    deg_pos: tuple | None = None
    deg_neg: tuple | None = None
    tail: float = 2.5
    k_min: int = 1
    coupling: str = "independent"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.coupling not in COUPLINGS:
            raise ValueError(f"unknown coupling {self.coupling!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        for name in ("p_pos", "p_neg", "r_pos", "r_neg"):
            val = getattr(self, name)
            if not 0.0 <= val <= 1.0:
                raise ValueError(f"{name}={val} outside [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        as_sign(self.sign)
        for name in ("deg_pos", "deg_neg"):
            seq = getattr(self, name)
            if seq is not None:
                seq = tuple(int(d) for d in seq)
                if len(seq) != self.n:
                    raise ValueError(f"{name} has {len(seq)} entries for n={self.n}")
                object.__setattr__(self, name, seq)

    def to_dict(self) -> dict:
        d = asdict(self)
        for name in ("deg_pos", "deg_neg"):
            if d[name] is not None:
                d[name] = list(d[name])
        return d

    @classmethod
    def from_dict(cls, d) -> "GeneratorSpec":
        return cls(**d)


def _mutual(pairs):
    out = set()
    for i, j in pairs:
        out.add((i, j))
        out.add((j, i))
    return out


def _one_world(spec, pairs):
    pairs = _mutual(pairs)
    if as_sign(spec.sign) == "+":
        return SignedDigraph(spec.n, pairs, ())
    return SignedDigraph(spec.n, (), pairs)


def star_pairs(n):
    return [(0, j) for j in range(1, n)]


def path_pairs(n):
    return [(i, i + 1) for i in range(n - 1)]


def complete_pairs(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def regular_pairs(n, k):
    """Circulant ``k``-regular graph: ``i ~ i +- 1..k/2`` plus the antipode when ``k`` is odd."""
    if not 0 <= k < n or (n * k) % 2:
        raise GenerationError(f"no {k}-regular graph on {n} nodes")
    pairs = set()
    for i in range(n):
        for s in range(1, k // 2 + 1):
            pairs.add(tuple(sorted((i, (i + s) % n))))
        if k % 2:
            pairs.add(tuple(sorted((i, (i + n // 2) % n))))
    return sorted(pairs)


def erdos_gallai(seq) -> bool:
    """True if ``seq`` is the degree sequence of some simple graph."""
    d = sorted((int(x) for x in seq), reverse=True)
    if any(x < 0 for x in d) or sum(d) % 2:
        return False
    n = len(d)
    prefix = 0
    for r in range(1, n + 1):
        prefix += d[r - 1]
        if prefix > r * (r - 1) + sum(min(x, r) for x in d[r:]):
            return False
    return True


def pareto_sequence(rng, n, tail=2.5, k_min=1):
    """Discretized Pareto degrees in ``[k_min, n-1]`` with an even sum."""
    k_max = max(k_min, n - 1)
    for _ in range(100):
        u = rng.random(n)
        seq = np.floor(k_min * (1.0 - u) ** (-1.0 / (tail - 1.0))).astype(np.int64)
        seq = np.clip(seq, k_min, k_max)
        if seq.sum() % 2:
            # parity fix on the smallest entry that can grow
            idx = int(np.argmin(np.where(seq < k_max, seq, np.iinfo(np.int64).max)))
            if seq[idx] < k_max:
                seq[idx] += 1
            else:
                seq[int(np.argmax(seq))] -= 1
        if erdos_gallai(seq):
            return seq
    raise GenerationError("could not draw a graphical sequence", {"n": n, "tail": tail})


def _penalty(counts, pairs):
    """Loops plus surplus copies among ``pairs``."""
    total = 0
    for e in set(pairs):
        c = counts[e]
        total += c if e[0] == e[1] else max(0, c - 1)
    return total


def realize_sequence(rng, seq, swap_factor=100, restarts=10):
    """Simple graph with exactly the degrees ``seq``.

    Stubs are matched at random, then self-loops and repeated pairs are
    removed by double-edge swaps ``(a,b),(c,d) -> (a,c),(b,d)``.  A swap is
    kept when it does not increase the number of defects, which lets the
    repair walk around configurations where no single swap helps.  Each
    matching gets at most ``swap_factor * |E|`` swap attempts; after that the
    stubs are rematched, up to ``restarts`` times.
    """
    seq = np.asarray(seq, dtype=np.int64)
    if not erdos_gallai(seq):
        raise GenerationError("degree sequence is not graphical", {"sequence": seq.tolist()})
    m = int(seq.sum()) // 2
    limit = swap_factor * max(m, 1)
    left = -1
    for _ in range(restarts):
        stubs = np.repeat(np.arange(len(seq)), seq)
        rng.shuffle(stubs)
        edges = [tuple(sorted((int(a), int(b)))) for a, b in zip(stubs[0::2], stubs[1::2])]
        counts = Counter(edges)
        bad = {i for i, e in enumerate(edges) if e[0] == e[1] or counts[e] > 1}
        attempts = 0
        while bad and attempts < limit:
            attempts += 1
            i = sorted(bad)[int(rng.integers(len(bad)))]
            j = int(rng.integers(m))
            if i == j:
                continue
            (a, b), (c, d) = edges[i], edges[j]
            if rng.random() < 0.5:
                c, d = d, c
            new1, new2 = tuple(sorted((a, c))), tuple(sorted((b, d)))
            touched = [edges[i], edges[j], new1, new2]
            before = _penalty(counts, touched)
            counts[edges[i]] -= 1
            counts[edges[j]] -= 1
            counts[new1] += 1
            counts[new2] += 1
            if _penalty(counts, touched) > before:
                counts[new1] -= 1
                counts[new2] -= 1
                counts[edges[i]] += 1
                counts[edges[j]] += 1
                continue
            edges[i], edges[j] = new1, new2
            bad = {t for t, e in enumerate(edges) if e[0] == e[1] or counts[e] > 1}
        if not bad:
            return sorted(edges)
        left = len(bad)
    raise GenerationError(
        "edge-swap repair did not converge",
        {"restarts": restarts, "attempts_per_restart": limit, "bad_edges": left, "sequence": seq.tolist()},
    )


def couple(rng, pos, neg, coupling):
    """Assign the two sequences to nodes according to ``coupling``.

    ``comonotone`` gives the r-th largest of both to the same node,
    ``antimonotone`` pairs the r-th largest positive with the r-th smallest
    negative; node order is a random permutation.  ``independent`` keeps the
    sequences as given.
    """
    pos = np.asarray(pos)
    neg = np.asarray(neg)
    if coupling == "independent":
        return pos, neg
    perm = rng.permutation(len(pos))
    p_sorted = np.sort(pos)[::-1]
    n_sorted = np.sort(neg)[::-1] if coupling == "comonotone" else np.sort(neg)
    out_p = np.empty_like(pos)
    out_n = np.empty_like(neg)
    out_p[perm] = p_sorted
    out_n[perm] = n_sorted
    return out_p, out_n


def _erdos_renyi(spec, rng):
    iu, ju = np.triu_indices(spec.n, 1)
    worlds = {}
    for sign, p, r in (("+", spec.p_pos, spec.r_pos), ("-", spec.p_neg, spec.r_neg)):
        tie = rng.random(len(iu)) < p
        mutual = rng.random(len(iu)) < r
        forward = rng.random(len(iu)) < 0.5
        edges = set()
        for a, b, t, mu, fw in zip(iu.tolist(), ju.tolist(), tie, mutual, forward):
            if not t:
                continue
            if mu:
                edges.update({(a, b), (b, a)})
            else:
                edges.add((a, b) if fw else (b, a))
        worlds[sign] = edges
    return SignedDigraph(spec.n, worlds["+"], worlds["-"])


def _configuration(spec, rng):
    drawn = spec.deg_pos is None or spec.deg_neg is None
    last = None
    for _ in range(20 if drawn else 1):
        pos = np.asarray(spec.deg_pos) if spec.deg_pos is not None else pareto_sequence(rng, spec.n, spec.tail, spec.k_min)
        neg = np.asarray(spec.deg_neg) if spec.deg_neg is not None else pareto_sequence(rng, spec.n, spec.tail, spec.k_min)
        pos, neg = couple(rng, pos, neg, spec.coupling)
        try:
            return SignedDigraph(spec.n, _mutual(realize_sequence(rng, pos)), _mutual(realize_sequence(rng, neg)))
        except GenerationError as exc:
            # drawn sequences that are graphical but too tight to realize are redrawn
            last = exc
    raise last


def generate(spec: GeneratorSpec) -> SignedDigraph:
    """Build the graph described by ``spec``; deterministic in ``spec.seed``."""
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    if spec.kind == "erdos-renyi-signed":
        return _erdos_renyi(spec, rng)
    if spec.kind == "configuration-signed":
        return _configuration(spec, rng)
    if spec.kind == "star":
        return _one_world(spec, star_pairs(spec.n))
    if spec.kind == "path":
        return _one_world(spec, path_pairs(spec.n))
    if spec.kind == "complete":
        return _one_world(spec, complete_pairs(spec.n))
    return _one_world(spec, regular_pairs(spec.n, spec.k))


# ---------------------------------------------------------------------------
# fixtures


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: SignedDigraph
    sign: str
    expected: dict = field(default_factory=dict)
    drop_isolated: bool = True


def _neg_fixture(name, n, pairs, expected):
    return Fixture(name, SignedDigraph(n, (), _mutual(pairs)), "-", expected)


def reference_fixtures() -> dict[str, Fixture]:
    """Small named graphs with hand-derived expected values (exact fractions)."""
    F = Fraction
    fx = [
        _neg_fixture("path3", 3, path_pairs(3), {
            "delta_g": F(-1, 6), "delta_l": F(-1, 3), "inversity": F(1),
            "gap": F(1, 6), "assortativity": F(-1), "estrada": F(1),
            "degree_variance": F(2, 9), "degree_diversity": F(1),
            "transitivity": F(0), "mean_clustering": F(0),
            "betweenness": (F(0), F(1), F(0)),
        }),
        _neg_fixture("path4", 4, path_pairs(4), {
            "delta_g": F(-1, 6), "delta_l": F(-1, 4),
            "delta_g_higher_2": F(-1, 10), "delta_l_higher_2": F(-5, 4),
        }),
        _neg_fixture("star4", 4, star_pairs(4), {
            "delta_g": F(-1, 2), "delta_l": F(-1), "inversity": F(1),
            "assortativity": F(-1), "estrada": F(1), "degree_variance": F(3, 4),
            "betweenness": (F(1), F(0), F(0), F(0)),
        }),
        _neg_fixture("k3", 3, complete_pairs(3), {
            "delta_g": F(0), "delta_l": F(0), "transitivity": F(1), "mean_clustering": F(1),
            "degree_variance": F(0), "degree_diversity": F(0), "estrada": F(0),
        }),
        _neg_fixture("k4", 4, complete_pairs(4), {
            "delta_g": F(0), "delta_l": F(0), "transitivity": F(1), "mean_clustering": F(1),
        }),
        _neg_fixture("dyad", 2, [(0, 1)], {"delta_g": F(0), "delta_l": F(0)}),
        Fixture(
            "mixed3",
            SignedDigraph(3, _mutual([(0, 1)]), _mutual([(1, 2)])),
            "+",
            {"mixed_delta_g": F(1, 6), "mixed_delta_l": F(0), "mixed_eligible": 2},
            drop_isolated=False,
        ),
        Fixture(
            "in_star",
            SignedDigraph(3, (), {(0, 2), (1, 2)}),
            "-",
            {"inversity_in-w(out)": None},
        ),
    ]
    return {f.name: f for f in fx}
