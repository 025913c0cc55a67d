"""Bundled word lists for the heuristic extractor and coverage metrics."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path


def load_wordlist(path) -> frozenset[str]:
    """Read a word list: one entry per line, '#' comments and blanks skipped."""
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        word = line.split("#", 1)[0].strip().lower()
        if word:
            words.add(word)
    return frozenset(words)


@lru_cache(maxsize=None)
def _bundled(name: str) -> frozenset[str]:
    ref = resources.files("querykg").joinpath("data", name)
    with resources.as_file(ref) as path:
        return load_wordlist(path)


def stopwords() -> frozenset[str]:
    """Function words and punctuation marks.

    Personal pronouns are deliberately absent: a pronoun routinely carries
    the whole subject of a sentence ("He received the prize"), and after
    coreference substitution the ones that remain are genuine arguments.
    """
    return _bundled("stopwords.txt")


def verbs() -> frozenset[str]:
    """Common English verbs with inflected forms, for predicate detection."""
    return _bundled("verbs.txt")


def particles() -> frozenset[str]:
    """Phrasal-verb particles that extend a detected predicate ("grew up").

    Ambiguous prepositions (in, on, to, with, ...) are excluded: following
    material like "in Germany" belongs to the object, not the predicate.
    """
    return _bundled("particles.txt")
