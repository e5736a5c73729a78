"""Per-dataset analysis documents, directory batches and the formula oracle."""
from __future__ import annotations

import datetime as _dt
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .errors import EmptyWorldError, MissingAttributeError, SizeCapError
from .generators import GeneratorSpec, generate, reference_fixtures
from .graph import SignedDigraph, make_view, validate
from .inversity import gap_check, is_defined
from .io import delta_rows, file_sha256, load_attributes, read_edges, write_delta_csv
from .measures import profile
from .naive import incidences, naive_delta
from .paradox import (
    FAMILIES,
    AttributeVector,
    ParadoxVariant,
    compute,
    delta_generalized_higher,
    standard_variants,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
ORACLE_MAX_N = 60
ORACLE_TOL = 1e-9
EDGE_SUFFIXES = (".csv", ".tsv")
ATTR_MARKER = ".attrs"


@dataclass(frozen=True)
class AnalysisConfig:
    """What to compute for one edge-list file.

    ``families`` default to every family; directed ones only run when
    ``"directed"`` is in ``modes``.  ``attributes=None`` means every column of
    the attribute file.  With ``lenient`` an empty world becomes a null entry
    with a reason instead of an error.
    """

    input: str
    attributes_path: str | None = None
    modes: tuple = ("symmetrized",)
    families: tuple = FAMILIES
    orders: tuple = (2,)
    attributes: tuple | None = None
    drop_isolated: bool = True
    per_node: bool = False
    seed: int = 0
    lenient: bool = False
    timestamp: bool = True
    dataset: str | None = None

    @property
    def name(self) -> str:
        return self.dataset or Path(self.input).stem


def _attrs_for(g: SignedDigraph, raw: dict | None, wanted):
    if not raw:
        if wanted:
            raise MissingAttributeError(wanted[0], [])
        return {}
    names = list(raw) if wanted is None else list(wanted)
    for n in names:
        if n not in raw:
            raise MissingAttributeError(n, [])
    return {n: raw[n] for n in names}


def _restricted(g: SignedDigraph, attr: AttributeVector):
    """Subgraph on nodes with a value for ``attr`` plus the re-keyed vector and excluded count."""
    by_id = attr.relabel(g)
    keep = sorted(by_id.values)
    excluded = g.n - len(keep)
    if excluded == 0:
        return g, by_id, 0
    sub = g.subgraph(keep)
    return sub, attr.relabel(sub), excluded


def _variant_entry(g, variant, attrs, cfg):
    """One document entry; empty worlds become null entries when lenient."""
    try:
        if variant.family.endswith("generalized"):
            sub, vec, excluded = _restricted(g, attrs[variant.measured])
            rep = compute(sub, variant, {variant.measured: vec}, cfg.drop_isolated)
            entry = rep.as_dict(cfg.per_node)
            entry["excluded"] = excluded
        else:
            entry = compute(g, variant, None, cfg.drop_isolated).as_dict(cfg.per_node)
        return entry
    except EmptyWorldError as exc:
        if not cfg.lenient:
            raise
        return {"variant": variant.key, "family": variant.family, "mode": variant.mode,
                "delta_g": None, "delta_l": None, "undefined": str(exc)}


def _json_safe(obj):
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        val = float(obj)
        return val if math.isfinite(val) else None
    if isinstance(obj, np.ndarray):
        return _json_safe(obj.tolist())
    if hasattr(obj, "reason") and not is_defined(obj):
        return {"undefined": obj.reason}
    return obj


def _generalized_table(g, attrs, cfg):
    rows = []
    modes = [m for m in cfg.modes if m != "directed"]
    for name, attr in attrs.items():
        sub, vec, excluded = _restricted(g, attr)
        for mode in modes:
            for sign in ("-", "+"):
                try:
                    v = make_view(sub, sign, mode, cfg.drop_isolated)
                except EmptyWorldError:
                    if not cfg.lenient:
                        raise
                    continue
                x = vec.aligned(v)
                first = delta_generalized_higher(v, vec, 1)
                second = delta_generalized_higher(v, vec, 2)
                own_all = math.fsum(x.tolist()) / len(x)
                own_e1 = math.fsum(x[np.isin(v.retained, first.nodes)].tolist()) / first.eligible_count
                own_e2 = math.fsum(x[np.isin(v.retained, second.nodes)].tolist()) / second.eligible_count
                base = {"attribute": name, "sign": sign, "mode": mode, "excluded": excluded}
                rows.append({**base, "scope": "global", "own_mean": own_all,
                             "neighbor_mean": own_all - first.delta_g,
                             "second_neighbor_mean": own_all - second.delta_g,
                             "delta_1": first.delta_g, "delta_2": second.delta_g})
                rows.append({**base, "scope": "local", "own_mean": own_e1,
                             "neighbor_mean": own_e1 - first.delta_l,
                             "second_neighbor_mean": own_e2 - second.delta_l,
                             "delta_1": first.delta_l, "delta_2": second.delta_l})
    return rows


def analyze_graph(g: SignedDigraph, cfg: AnalysisConfig, raw_attrs=None, provenance=None) -> dict:
    """Build the report document for an already loaded graph."""
    attrs = _attrs_for(g, raw_attrs, cfg.attributes)
    variants = standard_variants(cfg.families, cfg.modes, cfg.orders, tuple(attrs))
    entries = [_variant_entry(g, var, attrs, cfg) for var in variants]

    summary = validate(g)
    profiles, gaps = {}, []
    for mode in cfg.modes:
        for sign in ("-", "+"):
            try:
                v = make_view(g, sign, mode, cfg.drop_isolated)
            except EmptyWorldError:
                continue
            if mode != "directed":
                profiles[v.name] = profile(v, g).as_dict()
    for var in variants:
        if var.family == "higher" or var.family.endswith("generalized"):
            continue
        try:
            gaps.append(gap_check(g, var, None, cfg.drop_isolated).as_dict())
        except EmptyWorldError:
            continue
    doc = {
        "schema_version": SCHEMA_VERSION,
        "dataset": cfg.name,
        "provenance": provenance or {},
        "graph": summary,
        "config": {
            "modes": list(cfg.modes),
            "families": list(cfg.families),
            "orders": list(cfg.orders),
            "attributes": list(attrs),
            "drop_isolated": cfg.drop_isolated,
            "reciprocity_definition": "fraction of directed edges whose reverse is present",
        },
        "variants": entries,
        "profiles": profiles,
        "gap_checks": gaps,
        "generalized_table": _generalized_table(g, attrs, cfg) if attrs else [],
    }
    return _json_safe(doc)


def run_analysis(cfg: AnalysisConfig) -> dict:
    """Load ``cfg.input`` (and attributes) and return the report document."""
    load = read_edges(cfg.input)
    raw = None
    prov = {
        "input_sha256": file_sha256(cfg.input),
        "seed": cfg.seed,
        "tool_version": __version__,
        "duplicate_rows": load.duplicates,
    }
    if cfg.attributes_path:
        raw = load_attributes(cfg.attributes_path)
        prov["attributes_sha256"] = file_sha256(cfg.attributes_path)
    if cfg.timestamp:
        prov["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return analyze_graph(load.graph, cfg, raw, prov)


def document_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def document_delta_rows(doc: dict) -> list[tuple]:
    return delta_rows(doc["dataset"], doc["variants"])


def edge_files(directory) -> list[Path]:
    """Edge-list files in ``directory``; ``<stem>.attrs.csv`` files are attribute tables."""
    out = []
    for p in sorted(Path(directory).iterdir()):
        if p.is_file() and p.suffix.lower() in EDGE_SUFFIXES and not p.stem.endswith(ATTR_MARKER):
            out.append(p)
    return out


def attribute_file_for(path: Path) -> Path | None:
    cand = path.with_name(f"{path.stem}{ATTR_MARKER}{path.suffix}")
    return cand if cand.exists() else None


def run_batch(cfg: AnalysisConfig, directory, out_dir=None, csv_path=None, workers=4) -> list[dict]:
    """Analyze every edge file in ``directory`` with the same settings.

    Files are processed by a bounded thread pool.  Documents are returned
    (and written as ``<stem>.json`` under ``out_dir``) in sorted file order,
    and the combined delta CSV lists datasets in the same order.
    """
    files = edge_files(directory)
    if not files:
        raise FileNotFoundError(f"no edge files in {directory}")

    def one(path):
        attrs = cfg.attributes_path
        if attrs is None:
            found = attribute_file_for(path)
            attrs = str(found) if found else None
        sub = AnalysisConfig(**{**cfg.__dict__, "input": str(path), "attributes_path": attrs, "dataset": None})
        try:
            return run_analysis(sub)
        except Exception:
            log.error("analysis failed for %s", path)
            raise

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        docs = list(pool.map(one, files))
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for path, doc in zip(files, docs):
            (out / f"{path.stem}.json").write_text(document_json(doc), encoding="utf-8")
    if csv_path is not None:
        rows = [row for doc in docs for row in document_delta_rows(doc)]
        write_delta_csv(rows, csv_path)
    return docs


# ---------------------------------------------------------------------------
# oracle


def oracle_variants(g: SignedDigraph, max_order=4) -> list[ParadoxVariant]:
    """Every family on both signs; higher orders 2..max_order; one attribute ``x``."""
    out = standard_variants(
        FAMILIES, ("symmetrized", "reciprocated", "directed"), tuple(range(2, max_order + 1)), ("x",)
    )
    return out


def _pearson(pairs):
    a = np.array([p[0] for p in pairs], dtype=float)
    b = np.array([p[1] for p in pairs], dtype=float)
    a_c, b_c = a - a.mean(), b - b.mean()
    den = math.sqrt(float(a_c @ a_c) * float(b_c @ b_c))
    return float(a_c @ b_c) / den if den > 0 else None


def oracle_graph(name, g: SignedDigraph, attrs=None, seed=0, drop_isolated=True, max_order=4) -> list[dict]:
    """Residual rows comparing the matrix formulas with the loop implementations."""
    if g.n > ORACLE_MAX_N:
        raise SizeCapError(f"{name}: oracle is limited to n <= {ORACLE_MAX_N}, got n = {g.n}")
    if attrs is None:
        rng = np.random.Generator(np.random.PCG64(seed))
        attrs = {"x": AttributeVector.from_array("x", np.round(rng.normal(size=g.n), 6))}
    rows = []

    def row(variant, quantity, matrix, naive):
        residual = abs(matrix - naive)
        rows.append({
            "dataset": name, "variant": variant.key, "quantity": quantity,
            "matrix": matrix, "naive": naive, "residual": residual,
            "ok": residual <= ORACLE_TOL * max(1.0, abs(naive)),
        })

    for var in oracle_variants(g, max_order):
        try:
            rep = compute(g, var, attrs, drop_isolated)
        except EmptyWorldError:
            continue
        dg, dl, per = naive_delta(g, var, attrs, drop_isolated)
        row(var, "delta_g", rep.delta_g, float(dg))
        row(var, "delta_l", rep.delta_l, float(dl))
        per_matrix = dict(zip(rep.nodes.tolist(), rep.per_node.tolist()))
        worst = max((abs(per_matrix.get(i, math.inf) - float(d)) for i, d in per.items()), default=0.0)
        if set(per_matrix) != set(per):
            worst = math.inf
        rows.append({"dataset": name, "variant": var.key, "quantity": "per_node", "matrix": None,
                     "naive": None, "residual": worst, "ok": worst <= ORACLE_TOL * max(1.0, abs(float(dl)))})
        if var.family == "higher":
            continue
        gc = gap_check(g, var, attrs, drop_isolated)
        row(var, "gap_identity", gc.lhs, gc.rhs)
        if is_defined(gc.moments.rho):
            direct = _pearson(incidences(g, var, attrs, drop_isolated))
            if direct is not None:
                row(var, "inversity", gc.moments.rho, direct)
    return rows


def random_oracle_graphs(count, seed, max_n=40):
    """Seeded signed Erdos-Renyi digraphs with varied size, density and reciprocity."""
    rng = np.random.Generator(np.random.PCG64(seed))
    out = []
    for t in range(count):
        n = int(rng.integers(5, max_n + 1))
        spec = GeneratorSpec(
            "erdos-renyi-signed", n, seed=int(rng.integers(2**63)),
            p_pos=float(rng.uniform(0.08, 0.35)), p_neg=float(rng.uniform(0.05, 0.3)),
            r_pos=float(rng.uniform(0, 1)), r_neg=float(rng.uniform(0, 1)),
        )
        out.append((f"random_{t:02d}", generate(spec)))
    return out


@dataclass
class OracleResult:
    rows: list = field(default_factory=list)

    @property
    def failures(self) -> list:
        return [r for r in self.rows if not r["ok"]]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "checks": len(self.rows),
            "failures": len(self.failures),
            "max_residual": max((r["residual"] for r in self.rows), default=0.0),
            "datasets": sorted({r["dataset"] for r in self.rows}),
            "passed": self.passed,
        }


def run_oracle(graphs=None, fixtures=True, random_count=0, seed=0, max_n=40, max_order=4) -> OracleResult:
    """Run the oracle over the fixture catalog, given graphs and seeded random graphs."""
    result = OracleResult()
    todo = []
    if fixtures:
        for name, fx in reference_fixtures().items():
            todo.append((name, fx.graph, fx.drop_isolated))
    for name, g in graphs or []:
        todo.append((name, g, True))
    for name, g in random_oracle_graphs(random_count, seed, max_n):
        todo.append((name, g, True))
    for idx, (name, g, drop) in enumerate(todo):
        result.rows.extend(oracle_graph(name, g, seed=seed + idx, drop_isolated=drop, max_order=max_order))
    return result
