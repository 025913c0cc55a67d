"""Graph <-> token sequence with aligned graph-weight and query-relevance streams.

The linear form is a run of blocks, one per (subject, object) node pair:

    <sub> subject-name <obj> object-name <pred> pred-1 <s> pred-2 ...

Token i carries gw[i] (weight of the node or edge it names; 1 on indicator
tokens) and qr[i] (search rank of the first document that contributed it;
indicators inherit the enclosing subject's rank). Traversal is breadth-first
from the heaviest node, so truncating the sequence drops the least-supported
facts last.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path

from .kgraph import KnowledgeGraph

SUB, OBJ, PRED, SEP = "<sub>", "<obj>", "<pred>", "<s>"
INDICATORS = (SUB, OBJ, PRED, SEP)
_INDICATOR_SET = frozenset(INDICATORS)


def is_indicator(token: str) -> bool:
    return token in _INDICATOR_SET


@dataclass(frozen=True)
class LinearizedSequence:
    tokens: tuple[str, ...]
    gw: tuple[int, ...]
    qr: tuple[int, ...]

    def __post_init__(self):
        if not (len(self.tokens) == len(self.gw) == len(self.qr)):
            raise ValueError(
                f"stream lengths differ: {len(self.tokens)} tokens, "
                f"{len(self.gw)} gw, {len(self.qr)} qr"
            )
        for i, (w, r) in enumerate(zip(self.gw, self.qr)):
            if w < 1 or r < 1:
                raise ValueError(f"position {i}: gw and qr must be >= 1, got ({w}, {r})")

    def __len__(self) -> int:
        return len(self.tokens)

    def text(self) -> str:
        return " ".join(self.tokens)

    def save(self, path) -> None:
        Path(path).write_text(
            json.dumps({"tokens": list(self.tokens), "gw": list(self.gw), "qr": list(self.qr)})
            + "\n",
            encoding="utf-8",
        )

    @classmethod
    def load(cls, path) -> "LinearizedSequence":
        path = Path(path)
        for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from exc
            for field in ("tokens", "gw", "qr"):
                if field not in obj:
                    raise ValueError(f"{path}:{lineno}: missing field {field!r}")
            return cls(tuple(obj["tokens"]), tuple(obj["gw"]), tuple(obj["qr"]))
        raise ValueError(f"{path}: no linearization record found")


def linearize(g: KnowledgeGraph, max_tokens: int | None = None) -> LinearizedSequence:
    """Serialize a graph breadth-first from its heaviest node.

    Root choice: maximal weight, ties to the lexicographically smallest name
    and then the lowest node id. From a dequeued subject, target nodes are
    visited by descending total connecting edge weight (ties: lower node id)
    and each (subject, object) pair emits one block whose predicates are
    ordered by descending edge weight (ties: lower edge id). Objects seen for
    the first time join the queue; exhausted components hand over to the
    heaviest untouched node. With ``max_tokens`` the result is exactly the
    first max_tokens tokens of the unbounded sequence.
    """
    tokens: list[str] = []
    gw: list[int] = []
    qr: list[int] = []

    def emit(tok: str, w: int, r: int) -> None:
        tokens.append(tok)
        gw.append(w)
        qr.append(r)

    def full() -> bool:
        return max_tokens is not None and len(tokens) >= max_tokens

    remaining = set(g.nodes)
    queue: deque[int] = deque()
    while remaining and not full():
        root = min(remaining, key=lambda i: (-g.nodes[i].weight, g.nodes[i].name, i))
        remaining.discard(root)
        queue.append(root)
        while queue and not full():
            subj = g.nodes[queue.popleft()]
            out = g.out_edges(subj.node_id)
            targets = sorted(
                out, key=lambda dst: (-sum(g.edges[e].weight for e in out[dst]), dst)
            )
            for dst in targets:
                obj = g.nodes[dst]
                emit(SUB, 1, subj.qr_rank)
                for tok in subj.name:
                    emit(tok, subj.weight, subj.qr_rank)
                emit(OBJ, 1, subj.qr_rank)
                for tok in obj.name:
                    emit(tok, obj.weight, obj.qr_rank)
                for k, edge_id in enumerate(
                    sorted(out[dst], key=lambda e: (-g.edges[e].weight, e))
                ):
                    edge = g.edges[edge_id]
                    emit(PRED if k == 0 else SEP, 1, subj.qr_rank)
                    for tok in edge.name:
                        emit(tok, edge.weight, edge.qr_rank)
                if dst in remaining:
                    remaining.discard(dst)
                    queue.append(dst)

    if max_tokens is not None:
        tokens, gw, qr = tokens[:max_tokens], gw[:max_tokens], qr[:max_tokens]
    return LinearizedSequence(tuple(tokens), tuple(gw), tuple(qr))


@dataclass(frozen=True)
class BlockSpans:
    """Index spans (start, end), end exclusive, of one block's name runs."""

    subject: tuple[int, int]
    object: tuple[int, int]
    predicates: tuple[tuple[int, int], ...]


def scan_blocks(tokens) -> list[BlockSpans]:
    """Parse the block grammar, returning name spans per block.

    Grammar:  seq := block* ;  block := <sub> name+ <obj> name+ <pred> name+
    (<s> name+)*.  Raises ValueError naming the first offending position.
    """
    n = len(tokens)
    i = 0

    def name_run(after: str, pos: int) -> tuple[tuple[int, int], int]:
        if pos >= n or tokens[pos] != after:
            found = tokens[pos] if pos < n else "end of sequence"
            raise ValueError(f"position {pos}: expected {after!r}, found {found!r}")
        j = pos + 1
        start = j
        while j < n and tokens[j] not in _INDICATOR_SET:
            j += 1
        if j == start:
            raise ValueError(f"position {start}: empty name after {after!r}")
        return (start, j), j

    blocks: list[BlockSpans] = []
    while i < n:
        subj, i = name_run(SUB, i)
        obj, i = name_run(OBJ, i)
        pred, i = name_run(PRED, i)
        preds = [pred]
        while i < n and tokens[i] == SEP:
            pred, i = name_run(SEP, i)
            preds.append(pred)
        blocks.append(BlockSpans(subj, obj, tuple(preds)))
    return blocks


def parse(seq: LinearizedSequence) -> KnowledgeGraph:
    """Rebuild a graph from an untruncated linearization.

    Nodes are unified by name: the first occurrence fixes weight (from the
    gw stream) and qr rank. Each predicate segment becomes one edge. The
    inverse of linearize whenever distinct nodes never share a name; the
    rebuilt accepted count is the edge weight sum, so a graph that conserved
    weights round-trips to one that still does.
    """
    g = KnowledgeGraph()
    by_name: dict[tuple[str, ...], int] = {}

    def intern(span: tuple[int, int]) -> int:
        start, end = span
        name = tuple(seq.tokens[start:end])
        if name not in by_name:
            node = g.add_node(name, weight=seq.gw[start], qr_rank=seq.qr[start])
            by_name[name] = node.node_id
        return by_name[name]

    for block in scan_blocks(seq.tokens):
        subj_id = intern(block.subject)
        obj_id = intern(block.object)
        for start, end in block.predicates:
            g.add_edge(
                subj_id,
                obj_id,
                tuple(seq.tokens[start:end]),
                weight=seq.gw[start],
                qr_rank=seq.qr[start],
            )
    g.accepted_count = g.edge_weight_sum()
    return g
