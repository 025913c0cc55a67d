"""Masked graph completion: hiding names, keeping structure.

Shows the three masking modes over one linearized graph, the target list a
trainer would score against, and that the draw is a pure function of the
seed.
"""

from querykg import KnowledgeGraph, kb_mask, linearize

g = KnowledgeGraph()
s = g.add_node(("albert", "einstein"), weight=2, qr_rank=1)
o = g.add_node(("the", "nobel", "prize"), weight=2, qr_rank=1)
g.add_edge(s.node_id, o.node_id, ("won",), weight=1, qr_rank=1)
g.add_edge(s.node_id, o.node_id, ("received",), weight=1, qr_rank=1)
seq = linearize(g)
print("input:   ", seq.text())

# ---- the three modes --------------------------------------------------------

for mode in ("nodes", "edges", "both"):
    masked, targets = kb_mask(seq, mode=mode, p_mask=1.0, rng_seed=0)
    print(f"\nmode={mode!r}, p=1.0")
    print("  masked: ", " ".join(masked))
    print("  targets:", targets)

# Indicator tokens are never candidates: the structural skeleton always
# survives, only node and edge names disappear.

# ---- partial masking picks whole name spans ---------------------------------

masked, targets = kb_mask(seq, mode="nodes", p_mask=0.5, rng_seed=11)
print("\nmode='nodes', p=0.5, seed=11")
print("  masked: ", " ".join(masked))
print("  targets:", targets)

# ---- the seed is the whole story ---------------------------------------------

replays = {tuple(kb_mask(seq, mode="both", p_mask=0.4, rng_seed=7)[0])
           for _ in range(100)}
print("\n100 replays at seed 7 produced", len(replays), "distinct masking(s)")

different = sum(
    tuple(kb_mask(seq, mode="both", p_mask=0.4, rng_seed=s2)[0]) != next(iter(replays))
    for s2 in range(1, 30)
)
print("other seeds disagreeing with seed 7:", different, "of 29")
