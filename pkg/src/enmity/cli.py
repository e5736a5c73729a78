"""Command-line entry point: ``enmity <subcommand>``.

Exit codes: 0 success, 2 structural input error (including the oracle size
cap), 3 empty world, 4 oracle residual failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .analysis import (
    AnalysisConfig,
    document_delta_rows,
    document_json,
    run_analysis,
    run_batch,
    run_oracle,
)
from .errors import EmptyWorldError, EnmityError, GenerationError, MissingAttributeError, SizeCapError, StructuralError
from .generators import KINDS, COUPLINGS, GeneratorSpec, generate, reference_fixtures
from .graph import MODES, SignedDigraph, make_view
from .io import edges_text, load_edges, write_delta_csv, write_edges
from .measures import node_location_embedding, sigmoid, signed_pseudo_log
from .paradox import FAMILIES, delta_local_same
from .rewire import OBJECTIVES, maximize_strength

SEED_ENV = "ENMITY_SEED"

EXIT_OK, EXIT_STRUCTURAL, EXIT_EMPTY, EXIT_ORACLE = 0, 2, 3, 4


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise StructuralError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _write_text(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# subcommands


def cmd_analyze(args) -> int:
    cfg = AnalysisConfig(
        input=args.input,
        attributes_path=args.attributes,
        modes=tuple(args.mode),
        families=tuple(args.family),
        orders=tuple(args.order),
        attributes=tuple(args.attribute) if args.attribute else None,
        drop_isolated=not args.keep_isolated,
        per_node=args.per_node,
        seed=args.seed,
        lenient=args.lenient,
        timestamp=not args.no_timestamp,
    )
    if Path(args.input).is_dir():
        docs = run_batch(cfg, args.input, out_dir=args.out, csv_path=args.csv, workers=args.workers)
        print(json.dumps({"datasets": len(docs), "variants": len(docs[0]["variants"])}))
        return EXIT_OK
    doc = run_analysis(cfg)
    _write_text(args.out, document_json(doc))
    if args.csv:
        write_delta_csv(document_delta_rows(doc), args.csv)
    return EXIT_OK


def _spec_from_args(args, seed) -> GeneratorSpec:
    return GeneratorSpec(
        kind=args.kind, n=args.n, seed=seed, sign=args.sign, k=args.k,
        p_pos=args.p_pos, p_neg=args.p_neg, r_pos=args.r_pos, r_neg=args.r_neg,
        tail=args.tail, k_min=args.k_min, coupling=args.coupling,
    )


def cmd_generate(args) -> int:
    if args.count == 1:
        g = generate(_spec_from_args(args, args.seed))
        _write_text(args.out, edges_text(g))
        return EXIT_OK
    out = Path(args.out_dir or ".")
    out.mkdir(parents=True, exist_ok=True)
    specs = []
    for t in range(args.count):
        # consecutive seeds, one graph per file
        spec = _spec_from_args(args, (args.seed + t) % 2**64)
        write_edges(generate(spec), out / f"{args.prefix}{t:03d}.csv")
        specs.append(spec.to_dict())
    (out / f"{args.prefix}specs.json").write_text(json.dumps(specs, indent=2) + "\n", encoding="utf-8")
    print(json.dumps({"written": args.count, "directory": str(out)}))
    return EXIT_OK


def cmd_rewire(args) -> int:
    g = load_edges(args.input)
    v = make_view(g, args.sign, args.mode, not args.keep_isolated)
    final, trace = maximize_strength(v, args.objective, args.budget, args.seed, labels=g.labels)
    if args.trace:
        _write_text(args.trace, trace.to_csv())
    if args.out:
        mutual = final.original_edges() | {(j, i) for i, j in final.original_edges()}
        worlds = {"+": g.pos_edges, "-": g.neg_edges, args.sign: mutual}
        write_edges(SignedDigraph(g.n, worlds["+"], worlds["-"], g.labels), args.out)
    first, last = trace.steps[0], trace.steps[-1]
    print(json.dumps({
        "objective": trace.objective,
        "accepted": trace.accepted,
        "rejected": trace.rejected,
        "stop_reason": trace.stop_reason,
        "edges_before": v.edge_count,
        "edges_after": final.edge_count,
        "delta_g_before": first.delta_g,
        "delta_g_after": last.delta_g,
        "delta_l_before": first.delta_l,
        "delta_l_after": last.delta_l,
        "H_var_after": last.H_var,
    }))
    return EXIT_OK


def cmd_embed(args) -> int:
    g = load_edges(args.input)
    v = make_view(g, args.sign, args.mode, not args.keep_isolated)
    emb = node_location_embedding(v)
    rep = delta_local_same(v)
    local = dict(zip(rep.nodes.tolist(), rep.per_node.tolist()))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("node", "component", "singleton", "mean_distance", "sd_distance",
                "local_delta", "sigmoid_local_delta", "pseudo_log_local_delta"))
    for idx, node in enumerate(v.retained.tolist()):
        d = local.get(node)
        w.writerow((
            g.label(node), int(emb.component[idx]), int(emb.singleton[idx]),
            "" if emb.singleton[idx] else repr(float(emb.mean_distance[idx])),
            "" if emb.singleton[idx] else repr(float(emb.sd_distance[idx])),
            "" if d is None else repr(d),
            "" if d is None else repr(float(sigmoid(d))),
            "" if d is None else repr(signed_pseudo_log(d)),
        ))
    _write_text(args.out, buf.getvalue())
    return EXIT_OK


def cmd_oracle(args) -> int:
    graphs = [(Path(p).stem, load_edges(p)) for p in args.input]
    result = run_oracle(graphs, fixtures=args.fixtures or not (args.input or args.random),
                        random_count=args.random, seed=args.seed, max_n=args.max_n,
                        max_order=args.max_order)
    doc = {"summary": result.summary(), "failures": result.failures}
    if args.out:
        Path(args.out).write_text(json.dumps({**doc, "rows": result.rows}, indent=2, allow_nan=True) + "\n",
                                  encoding="utf-8")
    print(json.dumps(doc["summary"]))
    for r in result.failures[:20]:
        print(f"FAIL {r['dataset']} {r['variant']} {r['quantity']} residual={r['residual']!r}", file=sys.stderr)
    return EXIT_OK if result.passed else EXIT_ORACLE


def cmd_fixtures(args) -> int:
    out = {}
    for name, fx in reference_fixtures().items():
        out[name] = {
            "n": fx.graph.n,
            "sign": fx.sign,
            "drop_isolated": fx.drop_isolated,
            "expected": {k: (None if v is None else str(v) if not isinstance(v, tuple) else [str(t) for t in v])
                         for k, v in fx.expected.items()},
        }
        if args.out_dir:
            Path(args.out_dir).mkdir(parents=True, exist_ok=True)
            write_edges(fx.graph, Path(args.out_dir) / f"{name}.csv")
    print(json.dumps(out, indent=2))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    seed = default_seed()
    p = argparse.ArgumentParser(prog="enmity", description="Friendship and enmity paradoxes in signed networks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def view_flags(sp):
        sp.add_argument("--sign", default="-", choices=["-", "+"])
        sp.add_argument("--mode", default="symmetrized", choices=[m for m in MODES if m != "directed"])
        sp.add_argument("--keep-isolated", action="store_true", help="keep zero-degree nodes in the view")

    a = sub.add_parser("analyze", help="paradox report for an edge file or a directory of them")
    a.add_argument("input", help="edge list, or a directory for batch mode")
    a.add_argument("--attributes", help="attribute table (batch mode also picks up <stem>.attrs.csv)")
    a.add_argument("--attribute", action="append", help="restrict to this attribute column (repeatable)")
    a.add_argument("--mode", nargs="+", default=["symmetrized"], choices=MODES)
    a.add_argument("--family", nargs="+", default=list(FAMILIES), choices=FAMILIES)
    a.add_argument("--order", nargs="+", type=int, default=[2], help="walk lengths for the higher family")
    a.add_argument("--keep-isolated", action="store_true")
    a.add_argument("--per-node", action="store_true", help="include per-node local deltas")
    a.add_argument("--lenient", action="store_true", help="record empty worlds as null entries")
    a.add_argument("--no-timestamp", action="store_true")
    a.add_argument("--out", help="JSON document (file mode) or output directory (batch mode)")
    a.add_argument("--csv", help="delta CSV path")
    a.add_argument("--workers", type=int, default=4)
    a.add_argument("--seed", type=int, default=seed)
    a.set_defaults(func=cmd_analyze)

    gn = sub.add_parser("generate", help="synthetic signed networks")
    gn.add_argument("--kind", required=True, choices=KINDS)
    gn.add_argument("--n", type=int, required=True)
    gn.add_argument("--sign", default="-", choices=["-", "+"])
    gn.add_argument("--k", type=int, default=2)
    gn.add_argument("--p-pos", type=float, default=0.0)
    gn.add_argument("--p-neg", type=float, default=0.0)
    gn.add_argument("--r-pos", type=float, default=0.0)
    gn.add_argument("--r-neg", type=float, default=0.0)
    gn.add_argument("--tail", type=float, default=2.5)
    gn.add_argument("--k-min", type=int, default=1)
    gn.add_argument("--coupling", default="independent", choices=COUPLINGS)
    gn.add_argument("--count", type=int, default=1, help="number of graphs (seeds seed, seed+1, ...)")
    gn.add_argument("--out", help="edge file (single graph)")
    gn.add_argument("--out-dir", help="directory for --count > 1")
    gn.add_argument("--prefix", default="village_")
    gn.add_argument("--seed", type=int, default=seed)
    gn.set_defaults(func=cmd_generate)

    r = sub.add_parser("rewire", help="greedy rewiring toward maximal paradox strength")
    r.add_argument("input")
    view_flags(r)
    r.add_argument("--objective", default="global", choices=OBJECTIVES)
    r.add_argument("--budget", type=int, default=1000)
    r.add_argument("--trace", help="trace CSV path ('-' for stdout)")
    r.add_argument("--out", help="rewired edge list")
    r.add_argument("--seed", type=int, default=seed)
    r.set_defaults(func=cmd_rewire)

    e = sub.add_parser("embed", help="per-node distance embedding with local deltas")
    e.add_argument("input")
    view_flags(e)
    e.add_argument("--out", help="CSV path (default stdout)")
    e.set_defaults(func=cmd_embed)

    o = sub.add_parser("oracle", help="compare matrix formulas with loop implementations")
    o.add_argument("input", nargs="*", help="extra edge files (n <= 60)")
    o.add_argument("--fixtures", action="store_true", help="include the fixture catalog")
    o.add_argument("--random", type=int, default=0, help="number of seeded random graphs")
    o.add_argument("--max-n", type=int, default=40)
    o.add_argument("--max-order", type=int, default=4)
    o.add_argument("--out", help="full residual table as JSON")
    o.add_argument("--seed", type=int, default=seed)
    o.set_defaults(func=cmd_oracle)

    f = sub.add_parser("fixtures", help="list reference fixtures and their expected values")
    f.add_argument("--out-dir", help="also write each fixture as an edge file")
    f.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    try:
        parser = build_parser()
    except StructuralError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except EmptyWorldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (StructuralError, SizeCapError, MissingAttributeError, GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL
    except EnmityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL


if __name__ == "__main__":
    sys.exit(main())
