"""Desk-scale analyses: compression, answer coverage, shuffle robustness.

All metrics are defined over this package's own tokenization. Coverage
counts distinct non-stopword token types, so repeating a function word in
the input moves nothing.
"""

from __future__ import annotations

import hashlib
import math
import random
from collections import Counter
from dataclasses import dataclass, replace

import numpy as np

from . import lexicon
from .config import PipelineConfig
from .extract import Triple
from .ingest import Document, Query
from .kernels import topk_attend
from .kgraph import KnowledgeGraph, build, fit_model
from .linearize import LinearizedSequence, linearize, scan_blocks
from .tfidf import TfIdfModel


@dataclass(frozen=True)
class CoverageReport:
    """How much of a target answer an input sequence carries.

    target_token_count counts distinct non-stopword types in the target;
    missing_fraction is the share of those absent from the input (0.0 for a
    target with no content types); input_token_count is the raw input length.
    """

    target_token_count: int
    missing_fraction: float
    input_token_count: int


@dataclass(frozen=True)
class ShuffleReport:
    node_jaccard: float
    weight_sum_delta: int
    accepted_delta: int


def coverage(target, input_tokens, stopword_set=None) -> CoverageReport:
    """Fraction of target content types missing from the input."""
    stop = stopword_set if stopword_set is not None else lexicon.stopwords()
    target_types = {t for t in target if t not in stop}
    input_types = {t for t in input_tokens if t not in stop}
    missing = len(target_types - input_types) / len(target_types) if target_types else 0.0
    return CoverageReport(
        target_token_count=len(target_types),
        missing_fraction=missing,
        input_token_count=len(input_tokens),
    )


def compression(docs: list[Document], seq: LinearizedSequence) -> float:
    """Corpus tokens per linearized token; +inf for an empty sequence."""
    total = sum(d.token_count() for d in docs)
    if len(seq) == 0:
        return math.inf
    return total / len(seq)


def _name_fingerprints(g: KnowledgeGraph) -> Counter:
    return Counter(n.name for n in g.nodes.values())


def multiset_jaccard(a: Counter, b: Counter) -> float:
    """Jaccard over multisets: sum of min counts over sum of max counts."""
    if not a and not b:
        return 1.0
    keys = a.keys() | b.keys()
    inter = sum(min(a[k], b[k]) for k in keys)
    union = sum(max(a[k], b[k]) for k in keys)
    return inter / union


def shuffle_experiment(
    docs: list[Document],
    triples: list[Triple],
    q: Query,
    config: PipelineConfig,
    rng_seed: int,
) -> ShuffleReport:
    """Build on rank order and on a seeded rank permutation; compare.

    Relevance depends only on the query, so the accepted count and both
    weight sums are permutation-invariant and the reported deltas should be
    exactly zero; node_jaccard measures how far merge outcomes moved. One
    TF-IDF model (the document set is unchanged) serves both builds.
    """
    model = fit_model(docs)
    g_plain = build(
        docs, triples, q,
        tau_node=config.tau_node, tau_edge=config.tau_edge, tau_rel=config.tau_rel,
        max_triples=config.max_triples, model=model,
    )

    ranks = sorted(d.rank for d in docs)
    shuffled = ranks[:]
    random.Random(rng_seed).shuffle(shuffled)
    rank_map = dict(zip(ranks, shuffled))
    docs2 = sorted(
        (Document(d.doc_id, rank_map[d.rank], d.sentences) for d in docs),
        key=lambda d: d.rank,
    )
    triples2 = [replace(t, doc_rank=rank_map[t.doc_rank]) for t in triples]
    g_shuffled = build(
        docs2, triples2, q,
        tau_node=config.tau_node, tau_edge=config.tau_edge, tau_rel=config.tau_rel,
        max_triples=config.max_triples, model=model,
    )

    weight = lambda g: g.node_weight_sum() + g.edge_weight_sum()
    return ShuffleReport(
        node_jaccard=multiset_jaccard(_name_fingerprints(g_plain), _name_fingerprints(g_shuffled)),
        weight_sum_delta=weight(g_shuffled) - weight(g_plain),
        accepted_delta=g_shuffled.accepted_count - g_plain.accepted_count,
    )


def hits_sweep(
    docs: list[Document],
    triples: list[Triple],
    q: Query,
    config: PipelineConfig,
    cuts: list[int],
    target,
    stopword_set=None,
) -> list[tuple[int, CoverageReport]]:
    """Coverage of ``target`` by graphs built from the top-h documents.

    The TF-IDF model is fitted once on the full corpus and shared by every
    cut: the top-h triples are then a prefix of the full insertion sequence,
    merge decisions match, and the linearized token-type set can only grow
    with h — so missing_fraction is monotonically non-increasing, exactly.
    """
    if list(cuts) != sorted(cuts):
        raise ValueError(f"cuts must be ascending, got {cuts}")
    model = fit_model(docs)
    results = []
    for h in cuts:
        sub_docs = [d for d in docs if d.rank <= h]
        if not sub_docs:
            seq_tokens: tuple[str, ...] = ()
        else:
            sub_triples = [t for t in triples if t.doc_rank <= h]
            g = build(
                sub_docs, sub_triples, q,
                tau_node=config.tau_node, tau_edge=config.tau_edge, tau_rel=config.tau_rel,
                max_triples=config.max_triples, model=model,
            )
            seq_tokens = linearize(g).tokens
        results.append((h, coverage(target, seq_tokens, stopword_set)))
    return results


def tfidf_extract(docs: list[Document], q: Query, model: TfIdfModel, budget: int) -> list[str]:
    """Extractive baseline: best query-overlapping sentences under a budget.

    Sentences are ranked by overlap with the query (ties: document order)
    and concatenated; the last one is cut so the result is exactly
    min(budget, total tokens) long.
    """
    if budget < 0:
        raise ValueError(f"budget must be >= 0, got {budget}")
    ranked = sorted(
        (
            (-model.overlap(sent, q.tokens), d.rank, si, sent)
            for d in docs
            for si, sent in enumerate(d.sentences)
        ),
        key=lambda row: row[:3],
    )
    out: list[str] = []
    for _, _, _, sent in ranked:
        if len(out) >= budget:
            break
        out.extend(sent[: budget - len(out)])
    return out


def _token_vector(token: str, d: int, seed: int) -> np.ndarray:
    digest = hashlib.sha256(f"{seed}:{token}".encode()).digest()
    rng = np.random.default_rng(int.from_bytes(digest[:8], "little"))
    return rng.standard_normal(d)


def attention_table(
    seq: LinearizedSequence, query_tokens, d: int = 32, seed: int = 0
) -> list[dict]:
    """Rank graph units by accumulated query attention.

    Tokens get deterministic hash-seeded embeddings, topk_attend scores every
    sequence position against the query, and each node/edge name span sums
    the scores of its positions. Rows: {"kind", "name", "score"}, sorted by
    descending score (ties: name) — a readable view of what the query pulls
    on. Scores from repeated occurrences of one name accumulate.
    """
    if len(seq) == 0 or not query_tokens:
        return []
    input_enc = np.stack([_token_vector(t, d, seed) for t in seq.tokens])
    query_enc = np.stack([_token_vector(t, d, seed) for t in query_tokens])
    _, _, scores = topk_attend(query_enc, input_enc, k=len(seq))

    acc: dict[tuple[str, tuple[str, ...]], float] = {}
    for block in scan_blocks(seq.tokens):
        units = [("node", block.subject), ("node", block.object)] + [
            ("edge", span) for span in block.predicates
        ]
        for kind, (start, end) in units:
            key = (kind, tuple(seq.tokens[start:end]))
            acc[key] = acc.get(key, 0.0) + float(scores[start:end].sum())
    rows = [
        {"kind": kind, "name": " ".join(name), "score": score}
        for (kind, name), score in acc.items()
    ]
    rows.sort(key=lambda r: (-r["score"], r["name"]))
    return rows


def render_table(headers: list[str], rows: list[list]) -> str:
    """Aligned plain-text table."""
    cells = [[str(c) for c in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in cells:
        for i, c in enumerate(row):
            widths[i] = max(widths[i], len(c))
    line = lambda row: "  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
    out = [line(headers), line(["-" * w for w in widths])]
    out.extend(line(row) for row in cells)
    return "\n".join(out)
