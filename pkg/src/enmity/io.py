"""Edge lists, attribute tables and delta CSVs."""
from __future__ import annotations

import csv
import hashlib
import io
import logging
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import StructuralError
from .graph import SignedDigraph
from .paradox import AttributeVector

log = logging.getLogger(__name__)

EDGE_HEADER = ("src", "dst", "sign")
DELTA_HEADER = ("dataset", "variant", "scope", "delta", "eligible_n")
_SIGN_TOKENS = {"+1": "+", "1": "+", "-1": "-", "−1": "-"}


def _delimiter(path: Path, first_line: str) -> str:
    if path.suffix.lower() == ".tsv" or ("\t" in first_line and "," not in first_line):
        return "\t"
    return ","


def _rows(path):
    path = Path(path)
    text = path.read_text(encoding="utf-8-sig")
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise StructuralError(f"{path}: empty file", "line 1")
    return csv.reader(lines, delimiter=_delimiter(path, lines[0]))


def file_sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass(frozen=True)
class EdgeLoad:
    graph: SignedDigraph
    rows: int
    duplicates: int


def read_edges(path) -> EdgeLoad:
    """Parse a ``src,dst,sign`` file; node ids are assigned in order of first appearance."""
    reader = _rows(path)
    header = [h.strip().lower() for h in next(reader)]
    if tuple(header) != EDGE_HEADER:
        raise StructuralError(f"{path}: header must be src,dst,sign, got {','.join(header)}", "line 1")
    index: dict[str, int] = {}
    edges = {"+": set(), "-": set()}
    rows = duplicates = 0
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 3:
            raise StructuralError(f"{path}: expected 3 fields, got {len(row)}", f"line {lineno}")
        src, dst, token = (c.strip() for c in row)
        if not src or not dst:
            raise StructuralError(f"{path}: empty node id", f"line {lineno}")
        sign = _SIGN_TOKENS.get(token)
        if sign is None:
            raise StructuralError(f"{path}: bad sign token {token!r}", f"line {lineno}")
        if src == dst:
            raise StructuralError(f"{path}: self-loop on {src!r}", f"line {lineno}")
        i = index.setdefault(src, len(index))
        j = index.setdefault(dst, len(index))
        rows += 1
        if (i, j) in edges[sign]:
            duplicates += 1
        edges[sign].add((i, j))
    if duplicates:
        log.warning("%s: collapsed %d duplicate row(s)", path, duplicates)
    labels = tuple(sorted(index, key=index.get))
    g = SignedDigraph(len(index), edges["+"], edges["-"], labels)
    return EdgeLoad(g, rows, duplicates)


def load_edges(path) -> SignedDigraph:
    return read_edges(path).graph


def edges_text(g: SignedDigraph) -> str:
    """``g`` as ``src,dst,sign`` rows, positive edges first, each block sorted by node id."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(EDGE_HEADER)
    for sign, token in (("+", "+1"), ("-", "-1")):
        for i, j in sorted(g.edges(sign)):
            w.writerow([g.label(i), g.label(j), token])
    return buf.getvalue()


def write_edges(g: SignedDigraph, path) -> None:
    Path(path).write_text(edges_text(g), encoding="utf-8")


def load_attributes(path) -> dict[str, AttributeVector]:
    """One :class:`AttributeVector` per column, keyed by node label.

    Empty cells are recorded in ``absent``.
    """
    reader = _rows(path)
    header = [h.strip() for h in next(reader)]
    if not header or header[0].lower() != "node_id" or len(header) < 2:
        raise StructuralError(f"{path}: header must be node_id,<names...>", "line 1")
    names = header[1:]
    if len(set(names)) != len(names):
        raise StructuralError(f"{path}: repeated attribute name", "line 1")
    values = {name: {} for name in names}
    absent = {name: set() for name in names}
    seen = set()
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise StructuralError(f"{path}: expected {len(header)} fields, got {len(row)}", f"line {lineno}")
        node = row[0].strip()
        if node in seen:
            raise StructuralError(f"{path}: node {node!r} listed twice", f"line {lineno}")
        seen.add(node)
        for name, cell in zip(names, row[1:]):
            cell = cell.strip()
            if not cell:
                absent[name].add(node)
                continue
            try:
                val = float(cell)
            except ValueError:
                raise StructuralError(f"{path}: non-numeric value {cell!r}", f"line {lineno}, column {name!r}") from None
            if not math.isfinite(val):
                raise StructuralError(f"{path}: non-finite value {cell!r}", f"line {lineno}, column {name!r}")
            values[name][node] = val
    if not seen:
        raise StructuralError(f"{path}: no attribute rows", "line 2")
    return {name: AttributeVector(name, values[name], frozenset(absent[name])) for name in names}


def delta_rows(dataset: str, reports) -> list[tuple]:
    """Two rows (global, local) per report for the delta CSV."""
    rows = []
    for rep in reports:
        key = rep["variant"]
        if rep.get("delta_g") is None:
            rows.append((dataset, key, "global", "", ""))
            rows.append((dataset, key, "local", "", ""))
            continue
        rows.append((dataset, key, "global", repr(float(rep["delta_g"])), str(rep["n"])))
        rows.append((dataset, key, "local", repr(float(rep["delta_l"])), str(rep["eligible_count"])))
    return rows


def write_delta_csv(rows, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(DELTA_HEADER)
        w.writerows(rows)
