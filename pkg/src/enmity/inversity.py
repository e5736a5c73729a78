"""Inversity: edge-endpoint moments and the global/local gap identity.

Every paradox family has incidences ``(x_j, 1 / norm_i)``, one per walked
pair ``W[i, j] = 1``.  Their Pearson correlation is the (generalized)
inversity ``rho`` and the paradox gap obeys

    delta_g - delta_l = rho * sigma_D * sigma_ID * kbar + shift

where ``kbar = incidences / eligible nodes`` and ``shift`` is the mean of
``x`` over the whole view minus its mean over eligible nodes.  ``shift`` is
zero whenever every node of the view has a walked neighbor, which is the
usual case for undirected views with isolated nodes dropped.

Moments are computed from node-level sums (no incidence list is built) in
centered form, so constant inputs give exactly zero variance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import GraphView, SignedDigraph, cross_degrees, degrees, make_view, other_sign
from .paradox import (
    AttributeVector,
    ParadoxVariant,
    compute,
    delta_local_generalized,
    delta_local_same,
    parse_case,
)

GAP_TOL = 1e-9


@dataclass(frozen=True)
class Undefined:
    """Marker for a correlation that does not exist (zero variance)."""

    reason: str

    def __bool__(self):
        return False

    def __float__(self):
        return math.nan


def is_defined(value) -> bool:
    return not isinstance(value, Undefined)


@dataclass(frozen=True)
class EdgeMomentSet:
    mu_D: float
    mu_ID: float
    sigma_D: float
    sigma_ID: float
    rho: float | Undefined
    incidence_count: int
    mean_walk_degree: float
    eligible_count: int
    covariance: float

    def __post_init__(self):
        if self.incidence_count <= 0:
            raise ValueError("moment set needs at least one incidence")
        if self.sigma_D < 0 or self.sigma_ID < 0:
            raise ValueError("negative standard deviation")
        if is_defined(self.rho) and not -1.0 <= self.rho <= 1.0:
            raise ValueError(f"correlation {self.rho} outside [-1, 1]")

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["rho"] = self.rho if is_defined(self.rho) else None
        if not is_defined(self.rho):
            d["rho_undefined"] = self.rho.reason
        return d


@dataclass(frozen=True)
class GapCheck:
    """``lhs = delta_g - delta_l`` against ``rhs = rho sigma_D sigma_ID kbar + shift``.

    When the correlation is undefined ``applicable`` is False and ``reason``
    says why; ``rhs`` then uses the (zero) covariance directly.
    """

    lhs: float
    rhs: float
    residual: float
    shift: float
    applicable: bool
    reason: str | None
    moments: EdgeMomentSet
    variant: ParadoxVariant | None = None

    @property
    def tolerance(self) -> float:
        return GAP_TOL * max(1.0, abs(self.lhs))

    @property
    def holds(self) -> bool:
        return abs(self.residual) <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "variant": self.variant.key if self.variant else None,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "shift": self.shift,
            "applicable": self.applicable,
            "reason": self.reason,
            "rho": self.moments.rho if is_defined(self.moments.rho) else None,
        }


def _tiny(sd, scale):
    return sd <= 1e-12 * max(1.0, scale)


def moments_from_operator(W, x, norm) -> EdgeMomentSet:
    """Moments of the incidences ``(x_j, 1 / norm_i)`` over nonzero ``W[i, j]``.

    ``W`` is a 0/1 sparse matrix, ``norm`` its row sums.
    """
    x = np.asarray(x, dtype=float)
    norm = np.asarray(norm, dtype=float)
    S = int(W.nnz)
    if S == 0:
        raise ValueError("no incidences")
    c = np.asarray(W.sum(axis=0), dtype=float).ravel()
    eligible = norm > 0
    n_e = int(eligible.sum())
    mu_D = math.fsum((c * x).tolist()) / S
    mu_ID = n_e / S
    var_D = math.fsum((c * (x - mu_D) ** 2).tolist()) / S
    inv = np.zeros_like(norm)
    inv[eligible] = 1.0 / norm[eligible]
    var_ID = math.fsum((norm[eligible] * (inv[eligible] - mu_ID) ** 2).tolist()) / S
    centered_sum = W @ (x - mu_D)
    cov = math.fsum(((inv - mu_ID) * centered_sum)[eligible].tolist()) / S
    sd_D, sd_ID = math.sqrt(var_D), math.sqrt(var_ID)
    if _tiny(sd_D, abs(mu_D)):
        rho = Undefined("measured endpoint value is constant over incidences")
    elif _tiny(sd_ID, mu_ID):
        rho = Undefined("inverse walked degree is constant over incidences")
    else:
        rho = min(1.0, max(-1.0, cov / (sd_D * sd_ID)))
    return EdgeMomentSet(mu_D, mu_ID, sd_D, sd_ID, rho, S, S / n_e, n_e, cov)


# ---------------------------------------------------------------------------
# operator builders (kept separate from the paradox module's own assembly)


def _undirected_operator(v: GraphView):
    if v.directed:
        raise ValueError(f"{v.name} is directed")
    A = v.adjacency
    return A, np.asarray(A.sum(axis=1)).ravel()


def _directed_operator(v: GraphView, role):
    A = v.adjacency if role == "out-w" else v.adjacency.T.tocsr()
    return A, np.asarray(A.sum(axis=1)).ravel()


def _attr_values(attr, v):
    if isinstance(attr, AttributeVector):
        return attr.aligned(v)
    return np.asarray(attr, dtype=float)


def _operator_for(g: SignedDigraph, variant: ParadoxVariant, attrs, drop_isolated):
    """(W, x, norm, view) for a variant."""
    fam = variant.family
    if fam == "higher":
        raise ValueError("no gap identity for higher-order walks")
    if fam.startswith("directed"):
        v = make_view(g, variant.walk, "directed", drop_isolated)
        W, norm = _directed_operator(v, variant.role)
        if fam == "directed-same":
            d = degrees(v)
            x = d.k_in if variant.measured == "in" else d.k_out
        elif fam == "directed-mixed":
            cd = cross_degrees(g, v, variant.measured[0])
            x = cd.k_in if variant.measured[1:] == "in" else cd.k_out
        else:
            x = _attr_values(attrs[variant.measured], v)
        return W, x, norm, v
    v = make_view(g, variant.walk, variant.mode, drop_isolated)
    W, norm = _undirected_operator(v)
    if fam == "same":
        x = norm
    elif fam == "mixed":
        x = cross_degrees(g, v, variant.measured).k
    else:
        x = _attr_values(attrs[variant.measured], v)
    return W, x, norm, v


# ---------------------------------------------------------------------------
# public measures


def edge_moments(v: GraphView) -> EdgeMomentSet:
    """Same-world moments: incidences ``(k_j, 1 / k_i)``."""
    W, k = _undirected_operator(v)
    return moments_from_operator(W, k, k)


def inversity_same(v: GraphView) -> float | Undefined:
    """Correlation of an endpoint's degree with the other endpoint's inverse degree."""
    return edge_moments(v).rho


def inversity_mixed(g: SignedDigraph, walk_sign, mode="symmetrized", drop_isolated=True) -> EdgeMomentSet:
    """Walk ``walk_sign`` edges, measure the other sign's degree of the neighbor."""
    v = make_view(g, walk_sign, mode, drop_isolated)
    W, norm = _undirected_operator(v)
    x = cross_degrees(g, v, other_sign(walk_sign)).k
    return moments_from_operator(W, x, norm)


def inversity_directed(g: SignedDigraph, sign, case: str, drop_isolated=True) -> EdgeMomentSet:
    """Directed inversity for one of the four cases, e.g. ``"in-w(out)"``."""
    role, measured = parse_case(case)
    v = make_view(g, sign, "directed", drop_isolated)
    W, norm = _directed_operator(v, role)
    d = degrees(v)
    x = d.k_in if measured == "in" else d.k_out
    return moments_from_operator(W, x, norm)


def inversity_attribute(v: GraphView, attr) -> EdgeMomentSet:
    """Correlation of an endpoint's attribute with the other endpoint's inverse degree."""
    W, k = _undirected_operator(v)
    return moments_from_operator(W, _attr_values(attr, v), k)


def _finish(report, m, x, norm) -> GapCheck:
    x = np.asarray(x, dtype=float)
    eligible = np.asarray(norm) > 0
    shift = math.fsum(x.tolist()) / len(x) - math.fsum(x[eligible].tolist()) / int(eligible.sum())
    lhs = report.delta_g - report.delta_l
    if is_defined(m.rho):
        rhs = m.rho * m.sigma_D * m.sigma_ID * m.mean_walk_degree + shift
        applicable, reason = True, None
    else:
        rhs = m.covariance * m.mean_walk_degree + shift
        applicable, reason = False, m.rho.reason
    return GapCheck(lhs, rhs, lhs - rhs, shift, applicable, reason, m, report.variant)


def gap_check(g: SignedDigraph, variant: ParadoxVariant, attrs=None, drop_isolated=True) -> GapCheck:
    """Check the gap identity for ``variant`` on ``g``.

    ``lhs`` comes from :func:`enmity.paradox.compute`, ``rhs`` from the moment
    decomposition here.
    """
    report = compute(g, variant, attrs, drop_isolated)
    W, x, norm, _ = _operator_for(g, variant, attrs, drop_isolated)
    return _finish(report, moments_from_operator(W, x, norm), x, norm)


def gap_check_view(v: GraphView, attr=None) -> GapCheck:
    """Same-world (or attribute, if given) gap check directly on a view."""
    W, k = _undirected_operator(v)
    if attr is None:
        report, x = delta_local_same(v), k
    else:
        report, x = delta_local_generalized(v, attr), _attr_values(attr, v)
    return _finish(report, moments_from_operator(W, x, k), x, k)
