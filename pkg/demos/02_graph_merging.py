"""How repeated and near-duplicate facts collapse into weights.

Shows the three merge behaviours that give the graph its compression:
exact repeats stack weight, fuzzy name matches reuse an existing node,
and every insertion conserves total weight.
"""

from querykg import KnowledgeGraph, TfIdfModel, Triple

# A tiny background corpus fixes the TF-IDF statistics used for matching.
model = TfIdfModel([
    ("albert", "einstein", "won", "received", "the", "nobel", "prize"),
    ("einstein", "developed", "the", "theory", "of", "relativity"),
])

won = Triple(("albert", "einstein"), ("won",), ("the", "nobel", "prize"), 1, 0)
received = Triple(("albert", "einstein"), ("received",), ("the", "nobel", "prize"), 1, 1)
short_name = Triple(("einstein",), ("developed",), ("the", "theory", "of", "relativity"), 2, 0)

# ---- exact repeats stack weight -------------------------------------------

g = KnowledgeGraph()
for _ in range(4):
    g.insert_triple(won, model, tau_node=0.85, tau_edge=0.85)

print("after inserting the same fact four times:")
for n in g.nodes.values():
    print("  node", " ".join(n.name), "weight", n.weight)
for e in g.edges.values():
    print("  edge", " ".join(e.name), "weight", e.weight)

# ---- parallel predicates stay separate edges -------------------------------

g.insert_triple(received, model, tau_node=0.85, tau_edge=0.85)
print("\nafter adding a second predicate between the same pair:")
print("  edges:", sorted(" ".join(e.name) for e in g.edges.values()))

# ---- fuzzy node matching ----------------------------------------------------

# "einstein" overlaps "albert einstein" well enough at a looser threshold
# to reuse the node; the merged node keeps its original name.
g.insert_triple(short_name, model, tau_node=0.30, tau_edge=0.85)
print("\nafter a lower-threshold insert with the one-token name:")
names = sorted(" ".join(n.name) for n in g.nodes.values())
print("  node names:", names)
assert "einstein" not in names, "short name merged into the existing node"

# ---- conservation -----------------------------------------------------------

print("\naccepted so far:", g.accepted_count)
print("edge weight sum:", g.edge_weight_sum(), "(equals accepted)")
print("node weight sum:", g.node_weight_sum(), "(equals 2 x accepted)")
g.validate()
print("validate(): ok")
