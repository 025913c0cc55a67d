"""Per-query weighted directed multigraph with merge and relevance filtering.

Weights count evidence: a node or edge carries weight (merge operations + 1),
so after inserting the same fact four times its nodes and edge all weigh 4.
Two conservation laws follow from the insertion rule and hold for any
insertion sequence:

    sum of edge weights == accepted triple count
    sum of node weights == 2 * accepted triple count

(a self-loop receives both the subject and the object increment).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .extract import Triple
from .ingest import Document, Query
from .tfidf import TfIdfModel


@dataclass
class Node:
    node_id: int
    name: tuple[str, ...]
    weight: int
    qr_rank: int


@dataclass
class Edge:
    edge_id: int
    src: int
    dst: int
    name: tuple[str, ...]
    weight: int
    qr_rank: int


class KnowledgeGraph:
    """Mutable multigraph; parallel edges between one node pair are normal."""

    def __init__(self):
        self.nodes: dict[int, Node] = {}
        self.edges: dict[int, Edge] = {}
        self.accepted_count = 0
        self.rejected_count = 0
        # src id -> dst id -> edge ids in creation order
        self._out: dict[int, dict[int, list[int]]] = {}

    def __len__(self) -> int:
        return len(self.nodes)

    def out_edges(self, src: int) -> dict[int, list[int]]:
        """Outgoing adjacency of ``src``: dst node id -> edge ids."""
        return self._out.get(src, {})

    def add_node(self, name, weight: int = 1, qr_rank: int = 1) -> Node:
        if not name:
            raise ValueError("node name must be non-empty")
        if weight < 1 or qr_rank < 1:
            raise ValueError("node weight and qr_rank must be >= 1")
        node = Node(len(self.nodes), tuple(name), weight, qr_rank)
        self.nodes[node.node_id] = node
        return node

    def add_edge(self, src: int, dst: int, name, weight: int = 1, qr_rank: int = 1) -> Edge:
        if src not in self.nodes or dst not in self.nodes:
            raise ValueError(f"edge endpoints must exist: {src} -> {dst}")
        if not name:
            raise ValueError("edge name must be non-empty")
        if weight < 1 or qr_rank < 1:
            raise ValueError("edge weight and qr_rank must be >= 1")
        edge = Edge(len(self.edges), src, dst, tuple(name), weight, qr_rank)
        self.edges[edge.edge_id] = edge
        self._out.setdefault(src, {}).setdefault(dst, []).append(edge.edge_id)
        return edge

    def _resolve_node(self, name: tuple[str, ...], model: TfIdfModel, tau: float, doc_rank: int) -> Node:
        """Merge into the best-overlapping node at or above ``tau``, else create.

        Argmax over all nodes, ties to the lowest node id; a merge keeps the
        existing name and qr_rank and adds one weight.
        """
        best = None
        best_score = -1.0
        # dict order is creation order, so ties keep the lowest node id
        for node in self.nodes.values():
            score = model.overlap(node.name, name)
            if score > best_score:
                best, best_score = node, score
        if best is not None and best_score >= tau:
            best.weight += 1
            return best
        return self.add_node(name, weight=1, qr_rank=doc_rank)

    def insert_triple(self, t: Triple, model: TfIdfModel, tau_node: float, tau_edge: float) -> None:
        """Insert one accepted triple, merging against existing content.

        Subject resolves first, object second (the object may merge into the
        node the subject just created), then the predicate resolves among the
        edges already connecting that directed pair.
        """
        subj = self._resolve_node(t.subject, model, tau_node, t.doc_rank)
        obj = self._resolve_node(t.object, model, tau_node, t.doc_rank)

        best = None
        best_score = -1.0
        for edge_id in self._out.get(subj.node_id, {}).get(obj.node_id, []):
            edge = self.edges[edge_id]
            score = model.overlap(edge.name, t.predicate)
            if score > best_score:
                best, best_score = edge, score
        if best is not None and best_score >= tau_edge:
            best.weight += 1
        else:
            self.add_edge(subj.node_id, obj.node_id, t.predicate, weight=1, qr_rank=t.doc_rank)
        self.accepted_count += 1

    def node_weight_sum(self) -> int:
        return sum(n.weight for n in self.nodes.values())

    def edge_weight_sum(self) -> int:
        return sum(e.weight for e in self.edges.values())

    def validate(self) -> None:
        """Check the conservation laws and structural invariants; raise on breach."""
        for node in self.nodes.values():
            if node.weight < 1 or not node.name:
                raise ValueError(f"invalid node {node.node_id}")
        for edge in self.edges.values():
            if edge.src not in self.nodes or edge.dst not in self.nodes:
                raise ValueError(f"dangling edge {edge.edge_id}")
            if edge.weight < 1 or not edge.name:
                raise ValueError(f"invalid edge {edge.edge_id}")
        if self.edge_weight_sum() != self.accepted_count:
            raise ValueError(
                f"edge weights sum to {self.edge_weight_sum()}, expected {self.accepted_count}"
            )
        if self.node_weight_sum() != 2 * self.accepted_count:
            raise ValueError(
                f"node weights sum to {self.node_weight_sum()}, expected {2 * self.accepted_count}"
            )

    def to_dict(self, config: dict | None = None) -> dict:
        out: dict = {
            "nodes": [
                {"id": n.node_id, "name": " ".join(n.name), "weight": n.weight, "qr": n.qr_rank}
                for _, n in sorted(self.nodes.items())
            ],
            "edges": [
                {
                    "id": e.edge_id,
                    "from": e.src,
                    "to": e.dst,
                    "name": " ".join(e.name),
                    "weight": e.weight,
                    "qr": e.qr_rank,
                }
                for _, e in sorted(self.edges.items())
            ],
            "accepted": self.accepted_count,
            "rejected": self.rejected_count,
        }
        if config is not None:
            out["config"] = config
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "KnowledgeGraph":
        for field in ("nodes", "edges", "accepted", "rejected"):
            if field not in data:
                raise ValueError(f"graph object missing field {field!r}")
        g = cls()
        id_map: dict[int, int] = {}
        for spec in data["nodes"]:
            for field in ("id", "name", "weight", "qr"):
                if field not in spec:
                    raise ValueError(f"node object missing field {field!r}")
            if spec["id"] in id_map:
                raise ValueError(f"duplicate node id {spec['id']}")
            node = g.add_node(tuple(spec["name"].split()), spec["weight"], spec["qr"])
            id_map[spec["id"]] = node.node_id
        for spec in data["edges"]:
            for field in ("id", "from", "to", "name", "weight", "qr"):
                if field not in spec:
                    raise ValueError(f"edge object missing field {field!r}")
            if spec["from"] not in id_map or spec["to"] not in id_map:
                raise ValueError(f"edge {spec['id']} references a missing node")
            g.add_edge(
                id_map[spec["from"]],
                id_map[spec["to"]],
                tuple(spec["name"].split()),
                spec["weight"],
                spec["qr"],
            )
        g.accepted_count = data["accepted"]
        g.rejected_count = data["rejected"]
        return g

    def save(self, path, config: dict | None = None) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(config), indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )

    @classmethod
    def load(cls, path) -> "KnowledgeGraph":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def relevant(t: Triple, q: Query, model: TfIdfModel, tau_rel: float) -> bool:
    """Keep a triple iff its full text overlaps the query at tau_rel or above."""
    return model.overlap(t.tokens(), q.tokens) >= tau_rel


def fit_model(docs: list[Document]) -> TfIdfModel:
    """Per-query TF-IDF statistics: each ranked document is one bag of tokens."""
    return TfIdfModel([tuple(tok for sent in d.sentences for tok in sent) for d in docs])


def build(
    docs: list[Document],
    triples: list[Triple],
    q: Query,
    tau_node: float = 0.85,
    tau_edge: float = 0.85,
    tau_rel: float = 0.30,
    max_triples: int | None = None,
    model: TfIdfModel | None = None,
) -> KnowledgeGraph:
    """Construct the local graph for one query.

    Triples are processed in (doc_rank, sent_idx, input order) ascending so
    higher-ranked documents claim names and qr ranks first. Each triple must
    pass the query-relevance gate to be inserted; the rest are tallied as
    rejected, as is everything past the optional accepted-triples cap.

    ``model`` lets a caller share one fitted TfIdfModel across several
    builds (prefix sweeps need identical merge decisions); by default the
    model is fitted on ``docs``.
    """
    known_ranks = {d.rank for d in docs}
    for t in triples:
        if t.doc_rank not in known_ranks:
            raise ValueError(f"triple references doc_rank {t.doc_rank} with no such document")
    if model is None:
        model = fit_model(docs)

    g = KnowledgeGraph()
    ordered = sorted(enumerate(triples), key=lambda it: (it[1].doc_rank, it[1].sent_idx, it[0]))
    for _, t in ordered:
        if max_triples is not None and g.accepted_count >= max_triples:
            g.rejected_count += 1
            continue
        if relevant(t, q, model, tau_rel):
            g.insert_triple(t, model, tau_node, tau_edge)
        else:
            g.rejected_count += 1
    return g


def graph_stats(g: KnowledgeGraph) -> dict:
    """Exact counts and weight histograms for reporting."""
    node_hist: dict[int, int] = {}
    for n in g.nodes.values():
        node_hist[n.weight] = node_hist.get(n.weight, 0) + 1
    edge_hist: dict[int, int] = {}
    for e in g.edges.values():
        edge_hist[e.weight] = edge_hist.get(e.weight, 0) + 1
    return {
        "node_count": len(g.nodes),
        "edge_count": len(g.edges),
        "max_node_weight": max((n.weight for n in g.nodes.values()), default=0),
        "max_edge_weight": max((e.weight for e in g.edges.values()), default=0),
        "node_weight_hist": dict(sorted(node_hist.items())),
        "edge_weight_hist": dict(sorted(edge_hist.items())),
        "accepted": g.accepted_count,
        "rejected": g.rejected_count,
    }
