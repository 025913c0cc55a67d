"""Forward-pass reference kernels over a linearized graph.

Runs the numpy kernels on real pipeline output: gated attribute embeddings
over the weight streams, hierarchical top-k selection against a query, and
the chunked encoder with memory-compressed attention.
"""

import numpy as np

from querykg import (
    AttentionConfig,
    Document,
    EmbeddingTables,
    McaParams,
    Query,
    build,
    gated_embed,
    heuristic_extract,
    linearize,
    mca_encode,
    topk_attend,
)

docs = [
    Document.from_text("d1", 1, "Albert Einstein, a German theoretical physicist, "
                                "won the Nobel Prize. He received the Nobel Prize."),
    Document.from_text("d2", 2, "Albert Einstein developed the theory of relativity."),
]
q = Query.from_text("why did albert einstein win the nobel prize")
triples = [t for d in docs for t in heuristic_extract(d)]
seq = linearize(build(docs, triples, q, tau_rel=0.0))
print("sequence:", seq.text())

# ---- gated attribute embeddings --------------------------------------------

vocab = sorted(set(seq.tokens) | set(q.tokens))
tables = EmbeddingTables.random(vocab, d=16, max_positions=64, seed=0)
enc = gated_embed(tables, list(seq.tokens), list(seq.gw), list(seq.qr))
print("\nembedded:", enc.shape, "= (positions, 2d) with the gated gw/qr half")

# The gate decides per position how much attribute signal passes through.
# Positions with weight 1 and rank 1 share identical attribute rows.
flat = {(w, r) for w, r in zip(seq.gw, seq.qr)}
print("distinct (gw, qr) attribute pairs in this sequence:", sorted(flat))

# ---- hierarchical top-k selection -------------------------------------------

query_enc = gated_embed(tables, list(q.tokens),
                        [1] * len(q.tokens), [1] * len(q.tokens))
k = 6
idx, selected, scores = topk_attend(query_enc, enc, k)
print("\ntop", k, "positions by accumulated query attention:")
for i in idx:
    print(f"  pos {i:2d}  token {seq.tokens[i]!r}  score {scores[i]:.3f}")
print("scores sum to the query length:", round(float(scores.sum()), 6))

# ---- encoder with memory-compressed attention -------------------------------

cfg = AttentionConfig(k=k, d=16, chunk=8, conv_kernel=3, conv_stride=3)
params = McaParams.random(16, kernel=3, seed=1)
out, attn = mca_encode(selected if len(selected) >= 4 else enc, cfg, params,
                       return_attn=True)
print("\nencoded:", out.shape)
print("local chunks:", len(attn["local"]),
      "compressed matrix:", attn["compressed"].shape)
row_sums = attn["compressed"].sum(axis=1)
print("attention rows sum to one:", bool(np.allclose(row_sums, 1.0)))
