"""querykg: query-local knowledge graphs from multi-document text.

Build a compressed weighted graph from ranked search results, linearize it
into a token sequence with aligned graph-weight and query-relevance streams,
feed it to reference attention kernels, and measure compression, coverage,
and order robustness.
"""

__version__ = "0.1.0"

from .analysis import (
    CoverageReport,
    ShuffleReport,
    attention_table,
    compression,
    coverage,
    hits_sweep,
    shuffle_experiment,
    tfidf_extract,
)
from .config import PipelineConfig
from .extract import Triple, heuristic_extract, load_triples, write_triples
from .ingest import (
    CorefChain,
    Document,
    Query,
    apply_coref,
    load_coref,
    load_corpus,
    segment_sentences,
    tokenize,
    write_corpus,
)
from .kernels import (
    KBC_TOKEN,
    MASK_TOKEN,
    AttentionConfig,
    EmbeddingTables,
    McaParams,
    gated_embed,
    kb_mask,
    mca_encode,
    topk_attend,
)
from .kgraph import KnowledgeGraph, build, fit_model, graph_stats, relevant
from .linearize import (
    INDICATORS,
    LinearizedSequence,
    is_indicator,
    linearize,
    parse,
)
from .tfidf import TfIdfModel, fit

__all__ = [
    "AttentionConfig",
    "CorefChain",
    "CoverageReport",
    "Document",
    "EmbeddingTables",
    "INDICATORS",
    "KBC_TOKEN",
    "KnowledgeGraph",
    "LinearizedSequence",
    "MASK_TOKEN",
    "McaParams",
    "PipelineConfig",
    "Query",
    "ShuffleReport",
    "TfIdfModel",
    "Triple",
    "apply_coref",
    "attention_table",
    "build",
    "compression",
    "coverage",
    "fit",
    "fit_model",
    "gated_embed",
    "graph_stats",
    "heuristic_extract",
    "hits_sweep",
    "is_indicator",
    "kb_mask",
    "linearize",
    "load_coref",
    "load_corpus",
    "load_triples",
    "mca_encode",
    "parse",
    "relevant",
    "segment_sentences",
    "shuffle_experiment",
    "tfidf_extract",
    "tokenize",
    "topk_attend",
    "write_corpus",
    "write_triples",
]
