"""Command-line pipeline: extract, build, linearize, mask, stats, shuffle, sweep.

Every command resolves its configuration as flags > --config file > defaults,
prints the resolved values, and writes a ``<out>.meta.json`` provenance
sidecar alongside its output. Outputs are deterministic: identical inputs,
flags, and seed produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__, lexicon
from .analysis import hits_sweep, render_table, shuffle_experiment
from .config import PipelineConfig
from .extract import heuristic_extract, load_triples, write_triples
from .ingest import Query, apply_coref, load_coref, load_corpus, tokenize
from .kernels import kb_mask, save_kbc
from .kgraph import KnowledgeGraph, build, graph_stats
from .linearize import LinearizedSequence, linearize


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    g = parser.add_argument_group("configuration (flags > --config file > defaults)")
    g.add_argument("--config", type=Path, default=None, help="flat key=value config file")
    g.add_argument("--tau-node", type=float, dest="tau_node", help="node merge threshold")
    g.add_argument("--tau-edge", type=float, dest="tau_edge", help="edge merge threshold")
    g.add_argument("--tau-rel", type=float, dest="tau_rel", help="triple relevance threshold")
    g.add_argument("--max-tokens", type=int, dest="max_tokens", help="linearization budget")
    g.add_argument("--max-triples", type=int, dest="max_triples", help="accepted triples cap")
    g.add_argument("--topk", type=int, help="top-k attention selection size")
    g.add_argument("--chunk", type=int, help="local attention chunk length")
    g.add_argument("--conv-kernel", type=int, dest="conv_kernel", help="memory conv kernel")
    g.add_argument("--conv-stride", type=int, dest="conv_stride", help="memory conv stride")
    g.add_argument("--seed", type=int, help="rng seed")
    g.add_argument("--stopwords", dest="stopwords_path", help="stopword list file")
    g.add_argument("--verbs", dest="verbs_path", help="verb lexicon file")
    g.add_argument("--jobs", type=int, default=1, help="parallel workers where applicable")


def _resolve_config(args) -> PipelineConfig:
    cfg = PipelineConfig()
    if args.config is not None:
        cfg = PipelineConfig.from_file(args.config, cfg)
    return cfg.merged(
        tau_node=args.tau_node,
        tau_edge=args.tau_edge,
        tau_rel=args.tau_rel,
        max_tokens=args.max_tokens,
        max_triples=args.max_triples,
        topk=args.topk,
        chunk=args.chunk,
        conv_kernel=args.conv_kernel,
        conv_stride=args.conv_stride,
        seed=args.seed,
        stopwords_path=args.stopwords_path,
        verbs_path=args.verbs_path,
    )


def _print_config(cfg: PipelineConfig) -> None:
    pairs = sorted(cfg.provenance().items())
    print("config:", " ".join(f"{k}={v}" for k, v in pairs))
    print(f"seed: {cfg.seed}")


def _write_json(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _write_meta(out_path, command: str, cfg: PipelineConfig) -> None:
    _write_json(str(out_path) + ".meta.json", {"command": command, "config": cfg.provenance()})


def _stopwords(cfg: PipelineConfig):
    if cfg.stopwords_path:
        return lexicon.load_wordlist(cfg.stopwords_path)
    return lexicon.stopwords()


def _verbs(cfg: PipelineConfig):
    if cfg.verbs_path:
        return lexicon.load_wordlist(cfg.verbs_path)
    return lexicon.verbs()


def cmd_extract(args) -> int:
    cfg = _resolve_config(args)
    _print_config(cfg)
    docs = load_corpus(args.docs)
    if args.coref is not None:
        chains = load_coref(args.coref)
        docs = [apply_coref(d, chains) for d in docs]
    verbs = _verbs(cfg)
    stop = _stopwords(cfg)
    triples = []
    for doc in docs:
        triples.extend(heuristic_extract(doc, verbs, stopword_set=stop))
    write_triples(triples, args.out)
    _write_meta(args.out, "extract", cfg)
    print(f"extract: {len(docs)} documents -> {len(triples)} triples -> {args.out}")
    return 0


def cmd_build(args) -> int:
    cfg = _resolve_config(args)
    _print_config(cfg)
    docs = load_corpus(args.docs)
    triples = load_triples(args.triples)
    q = Query.from_text(args.query)
    g = build(
        docs, triples, q,
        tau_node=cfg.tau_node, tau_edge=cfg.tau_edge, tau_rel=cfg.tau_rel,
        max_triples=cfg.max_triples,
    )
    g.save(args.out, config=cfg.provenance())
    _write_meta(args.out, "build", cfg)
    print(
        f"build: {g.accepted_count} accepted, {g.rejected_count} rejected -> "
        f"{len(g.nodes)} nodes, {len(g.edges)} edges -> {args.out}"
    )
    return 0


def cmd_linearize(args) -> int:
    cfg = _resolve_config(args)
    _print_config(cfg)
    g = KnowledgeGraph.load(args.graph)
    seq = linearize(g, cfg.max_tokens)
    seq.save(args.out)
    _write_meta(args.out, "linearize", cfg)
    print(f"linearize: {len(seq)} tokens -> {args.out}")
    return 0


def cmd_mask(args) -> int:
    cfg = _resolve_config(args)
    _print_config(cfg)
    seq = LinearizedSequence.load(args.linearization)
    masked, targets = kb_mask(seq, args.mode, args.p_mask, cfg.seed)
    save_kbc(masked, targets, args.out)
    _write_meta(args.out, "mask", cfg)
    print(f"mask: {len(targets)} masked tokens of {len(seq)} -> {args.out}")
    return 0


def cmd_stats(args) -> int:
    cfg = _resolve_config(args)
    _print_config(cfg)
    g = KnowledgeGraph.load(args.graph)
    stats = graph_stats(g)
    payload = dict(stats)
    payload["node_weight_hist"] = {str(k): v for k, v in stats["node_weight_hist"].items()}
    payload["edge_weight_hist"] = {str(k): v for k, v in stats["edge_weight_hist"].items()}
    payload["config"] = cfg.provenance()
    _write_json(args.out, payload)
    _write_meta(args.out, "stats", cfg)
    rows = [[k, stats[k]] for k in ("node_count", "edge_count", "max_node_weight", "max_edge_weight", "accepted", "rejected")]
    print(render_table(["metric", "value"], rows))
    print(f"stats -> {args.out}")
    return 0


def cmd_shuffle(args) -> int:
    cfg = _resolve_config(args)
    _print_config(cfg)
    docs = load_corpus(args.docs)
    triples = load_triples(args.triples)
    q = Query.from_text(args.query)
    report = shuffle_experiment(docs, triples, q, cfg, cfg.seed)
    _write_json(
        args.out,
        {
            "node_jaccard": report.node_jaccard,
            "weight_sum_delta": report.weight_sum_delta,
            "accepted_delta": report.accepted_delta,
            "config": cfg.provenance(),
        },
    )
    _write_meta(args.out, "shuffle", cfg)
    print(
        render_table(
            ["metric", "value"],
            [
                ["node_jaccard", f"{report.node_jaccard:.4f}"],
                ["weight_sum_delta", report.weight_sum_delta],
                ["accepted_delta", report.accepted_delta],
            ],
        )
    )
    print(f"shuffle -> {args.out}")
    return 0


def _parse_cuts(text: str) -> list[int]:
    try:
        cuts = [int(piece) for piece in text.split(",") if piece.strip()]
    except ValueError:
        raise ValueError(f"--cuts expects comma-separated integers, got {text!r}") from None
    if not cuts:
        raise ValueError("--cuts must name at least one cut")
    return cuts


def cmd_sweep(args) -> int:
    cfg = _resolve_config(args)
    _print_config(cfg)
    docs = load_corpus(args.docs)
    triples = load_triples(args.triples)
    q = Query.from_text(args.query)
    target = tokenize(Path(args.target).read_text(encoding="utf-8"))
    cuts = _parse_cuts(args.cuts)
    stop = _stopwords(cfg)

    if args.jobs > 1:
        # per-cut calls stay in cut order, so parallelism cannot reorder output
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            parts = pool.map(
                lambda h: hits_sweep(docs, triples, q, cfg, [h], target, stop), cuts
            )
            results = [row for part in parts for row in part]
    else:
        results = hits_sweep(docs, triples, q, cfg, cuts, target, stop)

    _write_json(
        args.out,
        {
            "cuts": [
                {
                    "hits": h,
                    "missing_fraction": rep.missing_fraction,
                    "target_token_count": rep.target_token_count,
                    "input_token_count": rep.input_token_count,
                }
                for h, rep in results
            ],
            "config": cfg.provenance(),
        },
    )
    _write_meta(args.out, "sweep", cfg)
    print(
        render_table(
            ["hits", "missing_fraction", "input_tokens"],
            [[h, f"{rep.missing_fraction:.4f}", rep.input_token_count] for h, rep in results],
        )
    )
    print(f"sweep -> {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="querykg",
        description="Query-local knowledge graphs: construct, linearize, mask, analyze.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract triples from a documents file")
    p.add_argument("--docs", required=True, help="documents JSONL")
    p.add_argument("--coref", default=None, help="coreference chains JSONL")
    p.add_argument("--out", required=True, help="triples JSONL to write")
    _add_config_flags(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("build", help="build the query-local graph from triples")
    p.add_argument("--docs", required=True, help="documents JSONL")
    p.add_argument("--triples", required=True, help="triples JSONL")
    p.add_argument("--query", required=True, help="query text")
    p.add_argument("--out", required=True, help="graph JSON to write")
    _add_config_flags(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("linearize", help="serialize a graph to tokens + gw/qr streams")
    p.add_argument("--graph", required=True, help="graph JSON")
    p.add_argument("--out", required=True, help="linearization JSONL to write")
    _add_config_flags(p)
    p.set_defaults(func=cmd_linearize)

    p = sub.add_parser("mask", help="generate a KB-completion example")
    p.add_argument("--linearization", required=True, help="linearization JSONL")
    p.add_argument("--mode", choices=("nodes", "edges", "both"), default="both")
    p.add_argument("--p-mask", type=float, dest="p_mask", default=0.15, help="unit mask probability")
    p.add_argument("--out", required=True, help="kbc JSONL to write")
    _add_config_flags(p)
    p.set_defaults(func=cmd_mask)

    p = sub.add_parser("stats", help="graph size and weight statistics")
    p.add_argument("--graph", required=True, help="graph JSON")
    p.add_argument("--out", required=True, help="stats JSON to write")
    _add_config_flags(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("shuffle", help="document-order robustness experiment")
    p.add_argument("--docs", required=True)
    p.add_argument("--triples", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--out", required=True, help="report JSON to write")
    _add_config_flags(p)
    p.set_defaults(func=cmd_shuffle)

    p = sub.add_parser("sweep", help="coverage vs number of search hits")
    p.add_argument("--docs", required=True)
    p.add_argument("--triples", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--target", required=True, help="target answer text file")
    p.add_argument("--cuts", default="1,5,10,50", help="comma-separated hit counts")
    p.add_argument("--out", required=True, help="report JSON to write")
    _add_config_flags(p)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
