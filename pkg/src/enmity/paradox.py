"""Global and local paradox deltas for every variant family.

Each family is an instance of one pattern.  A walk operator ``W`` says which
neighbors a node looks at (``W[i, j] > 0``), a measured vector ``x`` says
what is compared, and ``norm[i]`` is the node's walked degree:

* global:  ``mean(x over the view) - sum_ij W_ij x_j / sum_ij W_ij``
* local:   ``x_i - (W x)_i / norm_i`` for every node with ``norm_i > 0``,
  averaged over those eligible nodes

Negative deltas mean the paradox holds (neighbors score higher).  The node
universe for the global mean is the view itself, so ``drop_isolated``
decides whether zero-degree nodes count.  All pure-count numerators are
accumulated in Python integers.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .errors import EmptyWorldError, MissingAttributeError, StructuralError, WalkOverflowError
from .graph import (
    DegreeView,
    GraphView,
    SignedDigraph,
    as_sign,
    cross_degrees,
    degrees,
    make_view,
    other_sign,
    walk_vector,
)

FAMILIES = (
    "same",
    "mixed",
    "generalized",
    "higher",
    "directed-same",
    "directed-mixed",
    "directed-generalized",
)
DIRECTED_CASES = ("in-w(out)", "out-w(in)", "out-w(out)", "in-w(in)")
MAX_ORDER = 8

_CASE_RE = re.compile(r"^(in|out)-w\((in|out)\)$")


@dataclass(frozen=True)
class ParadoxVariant:
    """Which paradox is computed.

    ``walk`` is the sign of the world whose edges are followed.  ``measured``
    is the compared quantity: a sign (degree in that world), ``in``/``out``
    for directed degrees, ``<sign><in|out>`` for directed mixed counts, or an
    attribute name.  ``role`` is ``in-w``/``out-w`` for directed families.
    """

    family: str
    walk: str
    measured: str
    role: str | None = None
    order: int = 1
    mode: str = "symmetrized"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.order > 1 and self.family != "higher":
            raise ValueError("only the higher family has order > 1")
        directed = self.family.startswith("directed")
        if directed != (self.role is not None):
            raise ValueError("directed families need a role, undirected ones must not have one")
        if self.role is not None and self.role not in ("in-w", "out-w"):
            raise ValueError(f"unknown role {self.role!r}")

    @property
    def label(self) -> str:
        if self.family == "generalized" or self.family == "directed-generalized":
            what = f"x:{self.measured}"
        else:
            what = self.measured
        if self.role is None:
            base = f"{self.walk}w({what})"
        else:
            base = f"[{self.walk}]{self.role}({what})"
        return base if self.order == 1 else f"{base}^{self.order}"

    @property
    def key(self) -> str:
        return f"{self.mode}:{self.family}:{self.label}"


@dataclass(frozen=True)
class ParadoxReport:
    delta_g: float
    delta_l: float
    per_node: np.ndarray
    eligible_count: int
    variant: ParadoxVariant
    nodes: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    n_universe: int = 0

    def as_dict(self, per_node=False) -> dict:
        out = {
            "variant": self.variant.key,
            "family": self.variant.family,
            "mode": self.variant.mode,
            "delta_g": self.delta_g,
            "delta_l": self.delta_l,
            "eligible_count": self.eligible_count,
            "n": self.n_universe,
        }
        if per_node:
            out["per_node"] = {int(v): float(d) for v, d in zip(self.nodes, self.per_node)}
        return out


@dataclass(frozen=True)
class AttributeVector:
    """A node attribute keyed by original node id (or by label before relabeling).

    ``absent`` lists keys that appeared in the source table with an empty cell.
    """

    name: str
    values: Mapping
    absent: frozenset = frozenset()

    def __post_init__(self):
        vals = {k: float(v) for k, v in dict(self.values).items()}
        bad = [k for k, v in vals.items() if not math.isfinite(v)]
        if bad:
            raise StructuralError(f"attribute {self.name!r} has non-finite values", bad[0])
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "absent", frozenset(self.absent))

    @classmethod
    def from_array(cls, name, x):
        return cls(name, {i: v for i, v in enumerate(np.asarray(x, dtype=float).tolist())})

    def __len__(self):
        return len(self.values)

    def relabel(self, g: SignedDigraph) -> "AttributeVector":
        """Re-key from external labels to node ids of ``g``; unknown labels are dropped."""
        index = {str(k): v for k, v in g.label_index().items()}
        values = {index[str(k)]: v for k, v in self.values.items() if str(k) in index}
        absent = {index[str(k)] for k in self.absent if str(k) in index}
        return AttributeVector(self.name, values, frozenset(absent))

    def aligned(self, v: GraphView) -> np.ndarray:
        missing = [int(u) for u in v.retained if int(u) not in self.values]
        if missing:
            raise MissingAttributeError(self.name, missing)
        return np.array([self.values[int(u)] for u in v.retained], dtype=float)


# ---------------------------------------------------------------------------
# shared assembly


def _exact_sum(a):
    a = np.asarray(a)
    if a.dtype.kind in "iub":
        return sum(int(t) for t in a.tolist())
    return math.fsum(a.tolist())


def _integral(x):
    x = np.asarray(x)
    if x.dtype.kind in "iub":
        return x.astype(np.int64)
    if x.size and np.all(np.floor(x) == x) and np.abs(x).max() < 2**52:
        return x.astype(np.int64)
    return x.astype(float)


def _global(x, Wx, total, weights=None):
    """(sum(x) * total - n * sum(Wx)) / (total * n).

    For non-integer ``x`` pass ``weights`` (column sums of the walk operator,
    so that ``sum(Wx) = weights . x``); the numerator is then formed in exact
    rationals and its sign is exact.
    """
    n = len(x)
    if total == 0 or n == 0:
        raise ZeroDivisionError("global delta on an empty walk")
    x = _integral(x)
    if x.dtype.kind == "f" and weights is not None:
        xs = [Fraction(t) for t in x.tolist()]
        walked = sum(int(w) * t for w, t in zip(np.asarray(weights).tolist(), xs))
        numerator = sum(xs) * total - n * walked
        return float(numerator / (total * n))
    numerator = _exact_sum(x) * total - n * _exact_sum(Wx)
    return numerator / (total * n)


def _local(x, Wx, norm):
    eligible = np.flatnonzero(norm > 0)
    per_node = np.asarray(x, dtype=float)[eligible] - np.asarray(Wx, dtype=float)[eligible] / norm[eligible]
    delta_l = math.fsum(per_node.tolist()) / len(per_node) if len(per_node) else float("nan")
    return eligible, per_node, delta_l


def _assemble(x, Wx, total, norm, retained, variant, weights=None) -> ParadoxReport:
    eligible, per_node, delta_l = _local(x, Wx, norm)
    return ParadoxReport(
        delta_g=_global(x, Wx, total, weights),
        delta_l=delta_l,
        per_node=per_node,
        eligible_count=len(eligible),
        variant=variant,
        nodes=np.asarray(retained)[eligible],
        n_universe=len(x),
    )


def _matvec(W, x):
    x = _integral(x)
    return W @ x


def _undirected(v: GraphView):
    if v.directed:
        raise ValueError(f"{v.name} is directed; use the directed_* functions")
    if v.adjacency.nnz == 0:
        raise EmptyWorldError(v.name)


def _counts_vector(counts, v: GraphView, direction="out"):
    if isinstance(counts, DegreeView):
        vec = counts.k_in if direction == "in" else counts.k_out
    else:
        vec = np.asarray(counts)
    if len(vec) != v.n:
        raise ValueError(f"counted vector has length {len(vec)}, view has {v.n} nodes")
    return vec


def _attribute_vector(attr, v: GraphView):
    if isinstance(attr, AttributeVector):
        return attr.aligned(v), attr.name
    x = np.asarray(attr, dtype=float)
    if len(x) != v.n:
        raise ValueError(f"attribute has length {len(x)}, view has {v.n} nodes")
    if not np.all(np.isfinite(x)):
        raise StructuralError("attribute has non-finite values")
    return x, "x"


# ---------------------------------------------------------------------------
# undirected families


def delta_global_same(v: GraphView) -> float:
    return delta_local_same(v).delta_g


def delta_local_same(v: GraphView) -> ParadoxReport:
    """Own degree versus neighbors' degree in one world."""
    _undirected(v)
    k = degrees(v).k
    variant = ParadoxVariant("same", v.sign, v.sign, mode=v.mode)
    return _assemble(k, v.adjacency @ k, int(k.sum()), k, v.retained, variant)


def delta_global_mixed(v_walk: GraphView, counts, count_sign=None) -> float:
    return delta_local_mixed(v_walk, counts, count_sign).delta_g


def delta_local_mixed(v_walk: GraphView, counts, count_sign=None) -> ParadoxReport:
    """Walk ``v_walk`` and compare the other world's degree ``counts``.

    ``counts`` must be aligned with ``v_walk`` (see :func:`cross_degrees`).
    """
    _undirected(v_walk)
    x = _counts_vector(counts, v_walk)
    k = degrees(v_walk).k
    variant = ParadoxVariant("mixed", v_walk.sign, count_sign or other_sign(v_walk.sign), mode=v_walk.mode)
    return _assemble(x, _matvec(v_walk.adjacency, x), int(k.sum()), k, v_walk.retained, variant)


def mixed_report(g: SignedDigraph, walk_sign, mode="symmetrized", drop_isolated=True) -> ParadoxReport:
    """Convenience: mixed-world report walking ``walk_sign`` and counting the other sign."""
    v = make_view(g, walk_sign, mode, drop_isolated)
    count_sign = other_sign(walk_sign)
    return delta_local_mixed(v, cross_degrees(g, v, count_sign), count_sign)


def delta_global_generalized(v: GraphView, attr) -> float:
    return delta_local_generalized(v, attr).delta_g


def delta_local_generalized(v: GraphView, attr) -> ParadoxReport:
    """Own attribute versus neighbors' attribute."""
    _undirected(v)
    x, name = _attribute_vector(attr, v)
    k = degrees(v).k
    variant = ParadoxVariant("generalized", v.sign, name, mode=v.mode)
    return _assemble(x, _matvec(v.adjacency, x), int(k.sum()), k, v.retained, variant, weights=k)


def _higher_walks(v: GraphView, ell: int):
    if not 1 <= ell <= MAX_ORDER:
        raise WalkOverflowError(f"order {ell} outside the supported range 1..{MAX_ORDER}")
    w_ell = walk_vector(v, ell)
    w_next = walk_vector(v, 1, start=w_ell)
    return w_ell, w_next


def delta_global_higher(v: GraphView, ell: int) -> float:
    """``(1'A1 * 1'A^l 1 - n * 1'A^(l+1) 1) / (1'A^l 1 * n)``."""
    _undirected(v)
    w_ell, w_next = _higher_walks(v, ell)
    k = degrees(v).k
    return _global(k, w_next, _exact_sum(w_ell))


def delta_local_higher(v: GraphView, ell: int) -> ParadoxReport:
    """``Delta_i = k_i - (A^l k)_i / k_i``; the global field matches :func:`delta_global_higher`."""
    _undirected(v)
    w_ell, w_next = _higher_walks(v, ell)
    k = degrees(v).k
    # A^l k = A^(l+1) 1 because k = A 1
    variant = ParadoxVariant("higher", v.sign, v.sign, order=ell, mode=v.mode)
    return _assemble(k, w_next, _exact_sum(w_ell), k, v.retained, variant)


def delta_generalized_higher(v: GraphView, attr, ell: int) -> ParadoxReport:
    """Attribute of ``ell``-step walk endpoints versus own attribute.

    Global: ``mean(x) - 1'A^l D_x 1 / 1'A^l 1``.  Local uses the walk-count
    weighted mean ``(A^l x)_i / (A^l 1)_i`` so that it is an average of
    endpoint attributes; for ``ell == 1`` both reduce to the generalized
    paradox.
    """
    _undirected(v)
    x, name = _attribute_vector(attr, v)
    if not 1 <= ell <= MAX_ORDER:
        raise WalkOverflowError(f"order {ell} outside the supported range 1..{MAX_ORDER}")
    w_ell = walk_vector(v, ell)
    Wx = _matvec(v.adjacency, x)
    for _ in range(ell - 1):
        Wx = v.adjacency @ Wx
    variant = ParadoxVariant("generalized", v.sign, name if ell == 1 else f"{name}@{ell}", mode=v.mode)
    return _assemble(x, Wx, _exact_sum(w_ell), w_ell, v.retained, variant, weights=w_ell)


# ---------------------------------------------------------------------------
# directed families


def parse_case(case: str) -> tuple[str, str]:
    """``"in-w(out)"`` -> ``("in-w", "out")``."""
    m = _CASE_RE.match(case.replace(" ", ""))
    if not m:
        raise ValueError(f"unknown directed case {case!r}; expected one of {DIRECTED_CASES}")
    return f"{m.group(1)}-w", m.group(2)


def _walk_operator(v: GraphView, role: str):
    """Operator whose row ``i`` selects the in- or out-neighbors of ``i``."""
    if not v.directed:
        raise ValueError(f"{v.name} is not directed")
    return v.adjacency.T.tocsr() if role == "in-w" else v.adjacency


def delta_directed(g: SignedDigraph, sign, case: str, drop_isolated=True) -> ParadoxReport:
    """One of the four directed cases on one sign world.

    ``in-w(out)``: own out-degree versus that of one's in-neighbors
    (haters/likers); ``out-w(in)``: own in-degree versus that of one's
    out-neighbors; ``out-w(out)`` and ``in-w(in)`` compare like with like.
    The report carries both the global and the local delta.
    """
    role, measured = parse_case(case)
    v = make_view(g, sign, "directed", drop_isolated)
    return _directed_report(v, role, measured)


def _directed_report(v: GraphView, role, measured) -> ParadoxReport:
    d = degrees(v)
    W = _walk_operator(v, role)
    x = d.k_in if measured == "in" else d.k_out
    norm = d.k_in if role == "in-w" else d.k_out
    variant = ParadoxVariant("directed-same", v.sign, measured, role=role, mode="directed")
    return _assemble(x, W @ x, v.edge_count, norm, v.retained, variant)


def delta_directed_mixed(g: SignedDigraph, walk_sign, walk_role, count_sign, count_dir="out",
                         drop_isolated=True) -> ParadoxReport:
    """Walk one directed world, count in/out degree in the other.

    E.g. ``walk_sign="+", walk_role="in-w", count_sign="-", count_dir="out"``
    compares one's number of enemies with that of one's likers.
    """
    if walk_role not in ("in-w", "out-w"):
        raise ValueError(f"unknown role {walk_role!r}")
    if count_dir not in ("in", "out"):
        raise ValueError(f"unknown count direction {count_dir!r}")
    v = make_view(g, walk_sign, "directed", drop_isolated)
    counts = cross_degrees(g, v, count_sign)
    x = counts.k_in if count_dir == "in" else counts.k_out
    d = degrees(v)
    W = _walk_operator(v, walk_role)
    norm = d.k_in if walk_role == "in-w" else d.k_out
    variant = ParadoxVariant("directed-mixed", v.sign, f"{as_sign(count_sign)}{count_dir}",
                             role=walk_role, mode="directed")
    return _assemble(x, W @ x, v.edge_count, norm, v.retained, variant)


def delta_directed_generalized(g: SignedDigraph, sign, neighbor: str, attr, drop_isolated=True) -> ParadoxReport:
    """Attribute of one's enemies (out-neighbors) or haters (in-neighbors)."""
    roles = {"enemy": "out-w", "friend": "out-w", "out-w": "out-w",
             "hater": "in-w", "liker": "in-w", "in-w": "in-w"}
    if neighbor not in roles:
        raise ValueError(f"unknown neighbor kind {neighbor!r}")
    role = roles[neighbor]
    v = make_view(g, sign, "directed", drop_isolated)
    x, name = _attribute_vector(attr, v)
    d = degrees(v)
    W = _walk_operator(v, role)
    norm = d.k_in if role == "in-w" else d.k_out
    variant = ParadoxVariant("directed-generalized", v.sign, name, role=role, mode="directed")
    weights = d.k_out if role == "in-w" else d.k_in
    return _assemble(x, _matvec(W, x), v.edge_count, norm, v.retained, variant, weights=weights)


# ---------------------------------------------------------------------------
# dispatch


def compute(g: SignedDigraph, variant: ParadoxVariant, attrs: Mapping | None = None,
            drop_isolated=True) -> ParadoxReport:
    """Evaluate ``variant`` on ``g``.  ``attrs`` maps attribute name -> AttributeVector."""
    fam = variant.family

    def attribute():
        name = variant.measured
        if not attrs or name not in attrs:
            raise MissingAttributeError(name, [])
        return attrs[name]

    if fam in ("same", "mixed", "generalized", "higher"):
        v = make_view(g, variant.walk, variant.mode, drop_isolated)
        if fam == "same":
            return delta_local_same(v)
        if fam == "mixed":
            return delta_local_mixed(v, cross_degrees(g, v, variant.measured), variant.measured)
        if fam == "generalized":
            return delta_local_generalized(v, attribute())
        return delta_local_higher(v, variant.order)
    if fam == "directed-same":
        return delta_directed(g, variant.walk, f"{variant.role}({variant.measured})", drop_isolated)
    if fam == "directed-mixed":
        return delta_directed_mixed(g, variant.walk, variant.role, variant.measured[0],
                                    variant.measured[1:], drop_isolated)
    return delta_directed_generalized(g, variant.walk, variant.role, attribute(), drop_isolated)


def standard_variants(families, modes=("symmetrized",), orders=(2,), attributes=()) -> list[ParadoxVariant]:
    """Expand family names into concrete variants.

    Undirected families are produced once per undirected mode; directed
    families only when ``"directed"`` is among ``modes``.
    """
    out = []
    undirected_modes = [m for m in modes if m != "directed"]
    for fam in families:
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {fam!r}")
        if fam.startswith("directed"):
            if "directed" not in modes:
                continue
            for s in ("-", "+"):
                if fam == "directed-same":
                    for case in DIRECTED_CASES:
                        role, measured = parse_case(case)
                        out.append(ParadoxVariant(fam, s, measured, role=role, mode="directed"))
                elif fam == "directed-mixed":
                    for role in ("in-w", "out-w"):
                        for cdir in ("out", "in"):
                            out.append(ParadoxVariant(fam, s, f"{other_sign(s)}{cdir}", role=role,
                                                      mode="directed"))
                else:
                    for name in attributes:
                        for role in ("out-w", "in-w"):
                            out.append(ParadoxVariant(fam, s, name, role=role, mode="directed"))
            continue
        for mode in undirected_modes:
            for s in ("-", "+"):
                if fam == "same":
                    out.append(ParadoxVariant(fam, s, s, mode=mode))
                elif fam == "mixed":
                    out.append(ParadoxVariant(fam, s, other_sign(s), mode=mode))
                elif fam == "higher":
                    for ell in orders:
                        out.append(ParadoxVariant(fam, s, s, order=int(ell), mode=mode))
                else:
                    for name in attributes:
                        out.append(ParadoxVariant(fam, s, name, mode=mode))
    return out


def covariance_numerator(a, b) -> float:
    """``sum(a) * sum(b) - n * sum(a * b)``, which equals ``-n^2 cov(a, b)``."""
    a = _integral(a)
    b = _integral(b)
    return _exact_sum(a) * _exact_sum(b) - len(a) * _exact_sum(a * b)
