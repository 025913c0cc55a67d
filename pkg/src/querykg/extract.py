"""Triple extraction: file-based Open IE input plus a heuristic baseline."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from . import lexicon
from .ingest import Document, tokenize


@dataclass(frozen=True)
class Triple:
    """One (subject, predicate, object) extraction from a single sentence."""

    subject: tuple[str, ...]
    predicate: tuple[str, ...]
    object: tuple[str, ...]
    doc_rank: int
    sent_idx: int

    def __post_init__(self):
        if not self.subject or not self.predicate or not self.object:
            raise ValueError("triple components must be non-empty")
        if self.doc_rank < 1:
            raise ValueError(f"doc_rank must be >= 1, got {self.doc_rank}")
        if self.sent_idx < 0:
            raise ValueError(f"sent_idx must be >= 0, got {self.sent_idx}")

    def tokens(self) -> tuple[str, ...]:
        """Subject + predicate + object, the text relevance is scored on."""
        return self.subject + self.predicate + self.object


def _is_punct(token: str) -> bool:
    return not any(ch.isalnum() for ch in token)


def _strip_appositives(tokens: list[str]) -> list[str]:
    """Drop comma-delimited insertions: each comma pairs greedily with the
    next comma and the whole span, commas included, is removed. An unpaired
    trailing comma survives.

    "albert einstein , a german physicist , won ..." -> "albert einstein won ..."
    """
    out: list[str] = []
    i = 0
    while i < len(tokens):
        if tokens[i] == ",":
            try:
                j = tokens.index(",", i + 1)
            except ValueError:
                j = -1
            if j >= 0:
                i = j + 1
                continue
        out.append(tokens[i])
        i += 1
    return out


def heuristic_extract(
    doc: Document,
    verb_lexicon: frozenset[str] | set[str] | None = None,
    stopword_set: frozenset[str] | set[str] | None = None,
    particle_set: frozenset[str] | set[str] | None = None,
) -> list[Triple]:
    """Baseline extractor: split each sentence at its first plausible verb.

    For every sentence, after dropping comma-pair appositives, the first
    lexicon verb preceded by at least one non-stopword splits the sentence:
    tokens before the verb become the subject, the verb plus any immediately
    following particles become the predicate, and the rest becomes the
    object. The subject is trimmed of stopwords at its leading edge and the
    object at its trailing edge (inner edges keep determiners: "the nobel
    prize", "in germany"); bare punctuation is trimmed from both ends of
    each. A sentence with no qualifying verb, or whose subject or object
    trims away entirely, yields nothing. At most one triple per sentence.

    This is a stand-in for an external extractor, not a contender: feed
    real Open IE output through load_triples when available.
    """
    verbs = verb_lexicon if verb_lexicon is not None else lexicon.verbs()
    if not verbs:
        raise ValueError("verb lexicon must be non-empty")
    stop = stopword_set if stopword_set is not None else lexicon.stopwords()
    particles = particle_set if particle_set is not None else lexicon.particles()

    triples: list[Triple] = []
    for sent_idx, sentence in enumerate(doc.sentences):
        tokens = _strip_appositives(list(sentence))

        verb_at = None
        content_seen = False
        for i, tok in enumerate(tokens):
            if content_seen and tok in verbs:
                verb_at = i
                break
            if tok not in stop:
                content_seen = True
        if verb_at is None:
            continue

        pred_end = verb_at + 1
        while pred_end < len(tokens) and tokens[pred_end] in particles:
            pred_end += 1

        subject = tokens[:verb_at]
        predicate = tokens[verb_at:pred_end]
        obj = tokens[pred_end:]

        while subject and (subject[0] in stop or _is_punct(subject[0])):
            subject.pop(0)
        while subject and _is_punct(subject[-1]):
            subject.pop()
        while obj and (obj[-1] in stop or _is_punct(obj[-1])):
            obj.pop()
        while obj and _is_punct(obj[0]):
            obj.pop(0)

        if subject and predicate and obj:
            triples.append(
                Triple(tuple(subject), tuple(predicate), tuple(obj), doc.rank, sent_idx)
            )
    return triples


def load_triples(path) -> list[Triple]:
    """Read a triples JSONL file in file order.

    Each line: {"subject": str, "predicate": str, "object": str,
    "doc_rank": int, "sent_idx": int}; text fields are tokenized on load.
    """
    path = Path(path)
    triples: list[Triple] = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from exc
            for field in ("subject", "predicate", "object", "doc_rank", "sent_idx"):
                if field not in obj:
                    raise ValueError(f"{path}:{lineno}: missing field {field!r}")
            for field in ("doc_rank", "sent_idx"):
                if not isinstance(obj[field], int) or isinstance(obj[field], bool):
                    raise ValueError(f"{path}:{lineno}: {field!r} must be an integer")
            try:
                triples.append(
                    Triple(
                        tuple(tokenize(obj["subject"])),
                        tuple(tokenize(obj["predicate"])),
                        tuple(tokenize(obj["object"])),
                        obj["doc_rank"],
                        obj["sent_idx"],
                    )
                )
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
    return triples


def write_triples(triples: list[Triple], path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for t in triples:
            fh.write(
                json.dumps(
                    {
                        "subject": " ".join(t.subject),
                        "predicate": " ".join(t.predicate),
                        "object": " ".join(t.object),
                        "doc_rank": t.doc_rank,
                        "sent_idx": t.sent_idx,
                    }
                )
                + "\n"
            )
