"""Corpus ingestion: tokenization, sentence segmentation, ranked documents, coreference."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

_TOKEN_RE = re.compile(r"\w+|[^\w\s]")
_SENT_SPLIT_RE = re.compile(r"[.!?]+")


def tokenize(text: str) -> list[str]:
    """Lowercase ``text`` and split into word tokens and single punctuation tokens.

    Whitespace never survives; punctuation characters become their own tokens.
    Empty input yields an empty list.
    """
    return _TOKEN_RE.findall(text.lower())


def segment_sentences(text: str) -> list[list[str]]:
    """Split raw text on terminal punctuation (. ! ?) and tokenize each piece.

    The terminal punctuation is consumed by the split; empty pieces are
    dropped, so every returned sentence is non-empty.
    """
    sentences = []
    for piece in _SENT_SPLIT_RE.split(text):
        tokens = tokenize(piece)
        if tokens:
            sentences.append(tokens)
    return sentences


@dataclass(frozen=True)
class Document:
    """One ranked search result, segmented into tokenized sentences.

    ``rank`` is the search-result ordinal (1 = top hit) and is what the
    query-relevance token stream is derived from downstream.
    """

    doc_id: str
    rank: int
    sentences: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"document {self.doc_id!r}: rank must be >= 1, got {self.rank}")
        for i, sent in enumerate(self.sentences):
            if not sent:
                raise ValueError(f"document {self.doc_id!r}: sentence {i} is empty")

    @classmethod
    def from_text(cls, doc_id: str, rank: int, text: str) -> "Document":
        return cls(doc_id, rank, tuple(tuple(s) for s in segment_sentences(text)))

    def token_count(self) -> int:
        return sum(len(s) for s in self.sentences)


@dataclass(frozen=True)
class Query:
    """The question or title whose web results the corpus represents."""

    tokens: tuple[str, ...]

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("query must be non-empty")

    @classmethod
    def from_text(cls, text: str) -> "Query":
        return cls(tuple(tokenize(text)))


@dataclass(frozen=True)
class CorefChain:
    """Externally produced coreference chain for one document.

    ``mentions`` are (sentence index, token start, token end) spans, end
    inclusive, indexed against this package's tokenization of the document.
    """

    doc_id: str
    canonical: tuple[str, ...]
    mentions: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if not self.canonical:
            raise ValueError(f"coref chain for {self.doc_id!r}: canonical mention is empty")
        for sent, start, end in self.mentions:
            if sent < 0 or start < 0 or end < start:
                raise ValueError(
                    f"coref chain for {self.doc_id!r}: bad span (sent={sent}, start={start}, end={end})"
                )
        by_sent: dict[int, list[tuple[int, int]]] = {}
        for sent, start, end in self.mentions:
            by_sent.setdefault(sent, []).append((start, end))
        for sent, spans in by_sent.items():
            spans.sort()
            for (s0, e0), (s1, _e1) in zip(spans, spans[1:]):
                if s1 <= e0:
                    raise ValueError(
                        f"coref chain for {self.doc_id!r}: overlapping spans in sentence {sent}"
                    )


def apply_coref(doc: Document, chains: list[CorefChain]) -> Document:
    """Replace every mention span in ``doc`` with its chain's canonical tokens.

    Chains whose ``doc_id`` does not match are ignored, so a whole corpus'
    chains can be passed for each document. Within a sentence, replacements
    run right to left so earlier spans keep their indices. Sentence count is
    unchanged and tokens outside mention spans are untouched.

    Raises ValueError for out-of-bounds spans, identifying the span, and for
    overlapping spans from different chains (the substitution would be
    ambiguous).
    """
    mentions_by_sent: dict[int, list[tuple[int, int, tuple[str, ...]]]] = {}
    for chain in chains:
        if chain.doc_id != doc.doc_id:
            continue
        for sent, start, end in chain.mentions:
            if sent >= len(doc.sentences) or end >= len(doc.sentences[sent]):
                raise ValueError(
                    f"coref span out of bounds for document {doc.doc_id!r}: "
                    f"sent={sent}, start={start}, end={end}"
                )
            mentions_by_sent.setdefault(sent, []).append((start, end, chain.canonical))

    new_sentences = [list(s) for s in doc.sentences]
    for sent, spans in mentions_by_sent.items():
        spans.sort(key=lambda m: m[0], reverse=True)
        for (s0, e0, _), (s1, e1, _) in zip(spans, spans[1:]):
            # spans sorted by start descending: the later span must end before
            # the earlier one starts
            if e1 >= s0:
                raise ValueError(
                    f"overlapping coref spans in document {doc.doc_id!r}, sentence {sent}: "
                    f"({s1},{e1}) and ({s0},{e0})"
                )
        for start, end, canonical in spans:
            new_sentences[sent][start : end + 1] = list(canonical)

    return Document(doc.doc_id, doc.rank, tuple(tuple(s) for s in new_sentences))


def load_corpus(path) -> list[Document]:
    """Read a documents JSONL file and return Documents sorted by rank.

    Each line is an object {"doc_id": str, "rank": int, "text": str}.
    Malformed lines and duplicate ranks raise ValueError naming the line.
    """
    path = Path(path)
    docs: list[Document] = []
    seen_ranks: dict[int, int] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from exc
            if not isinstance(obj, dict):
                raise ValueError(f"{path}:{lineno}: expected an object")
            for field in ("doc_id", "rank", "text"):
                if field not in obj:
                    raise ValueError(f"{path}:{lineno}: missing field {field!r}")
            doc_id, rank, text = obj["doc_id"], obj["rank"], obj["text"]
            if not isinstance(doc_id, str):
                raise ValueError(f"{path}:{lineno}: 'doc_id' must be a string")
            if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
                raise ValueError(f"{path}:{lineno}: 'rank' must be a positive integer")
            if not isinstance(text, str):
                raise ValueError(f"{path}:{lineno}: 'text' must be a string")
            if rank in seen_ranks:
                raise ValueError(
                    f"{path}:{lineno}: duplicate rank {rank} (first seen on line {seen_ranks[rank]})"
                )
            seen_ranks[rank] = lineno
            docs.append(Document.from_text(doc_id, rank, text))
    docs.sort(key=lambda d: d.rank)
    return docs


def write_corpus(docs: list[Document], path) -> None:
    """Write documents as JSONL, one sentence per terminal period.

    Round-trips through load_corpus for corpora whose sentence tokens carry
    no terminal punctuation (always true of load_corpus output).
    """
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for doc in docs:
            text = " ".join(" ".join(sent) + " ." for sent in doc.sentences)
            fh.write(json.dumps({"doc_id": doc.doc_id, "rank": doc.rank, "text": text}) + "\n")


def load_coref(path) -> list[CorefChain]:
    """Read a coref JSONL file: {"doc_id", "canonical", "mentions": [{"sent","start","end"}]}."""
    path = Path(path)
    chains: list[CorefChain] = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from exc
            for field in ("doc_id", "canonical", "mentions"):
                if field not in obj:
                    raise ValueError(f"{path}:{lineno}: missing field {field!r}")
            canonical = tuple(tokenize(obj["canonical"]))
            mentions = []
            for m in obj["mentions"]:
                for field in ("sent", "start", "end"):
                    if field not in m:
                        raise ValueError(f"{path}:{lineno}: mention missing field {field!r}")
                mentions.append((m["sent"], m["start"], m["end"]))
            try:
                chains.append(CorefChain(obj["doc_id"], canonical, tuple(mentions)))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
    return chains
