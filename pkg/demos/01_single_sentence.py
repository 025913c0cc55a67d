"""One sentence, end to end: triple, graph, token sequence.

Walks the smallest possible input through every pipeline stage and prints
what each stage produced, so you can see the whole data shape in one screen.
"""

from querykg import Document, Query, build, heuristic_extract, linearize

# ---- a single ranked "search result" -------------------------------------

doc = Document.from_text(
    "hit-1", 1,
    "Albert Einstein, a German theoretical physicist, won the Nobel Prize.",
)
print("document:", doc.doc_id, "rank", doc.rank)
print("sentences:", [" ".join(s) for s in doc.sentences])

# The appositive between the commas never reaches the triple: it is stripped
# before the verb scan, so the subject stays the two-token entity name.
triples = heuristic_extract(doc)
for t in triples:
    print("triple:", t.subject, t.predicate, t.object,
          "from doc rank", t.doc_rank, "sentence", t.sent_idx)

# ---- graph construction --------------------------------------------------

q = Query.from_text("why did albert einstein win the nobel prize")
g = build([doc], triples, q)
print("\ngraph: %d nodes, %d edges, accepted %d, rejected %d"
      % (len(g.nodes), len(g.edges), g.accepted_count, g.rejected_count))
for n in g.nodes.values():
    print("  node", " ".join(n.name), "weight", n.weight, "qr", n.qr_rank)
for e in g.edges.values():
    print("  edge", " ".join(e.name), "weight", e.weight, "qr", e.qr_rank)

# ---- linearization -------------------------------------------------------

seq = linearize(g)
print("\ntokens:", seq.text())
print("gw:    ", seq.gw)
print("qr:    ", seq.qr)

# Every stream has one entry per token; indicators carry weight 1 and the
# subject's relevance rank so the model can find block boundaries.
assert len(seq.tokens) == len(seq.gw) == len(seq.qr)
print("\nall three streams aligned over", len(seq), "positions")
