"""Paths to the bundled corpora used by tests and demos."""

from __future__ import annotations

from importlib import resources
from pathlib import Path


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled fixture file."""
    ref = resources.files("querykg").joinpath("fixtures", name)
    path = Path(str(ref))
    if not path.is_file():
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return path


def einstein_docs() -> Path:
    """Two short documents: the prize sentences plus biography lines."""
    return fixture_path("einstein_docs.jsonl")


def einstein_coref() -> Path:
    """Chain resolving the pronoun in the second prize sentence."""
    return fixture_path("einstein_coref.jsonl")


def einstein_query() -> Path:
    """Query text the Einstein corpus answers."""
    return fixture_path("einstein_query.txt")


def web50_docs() -> Path:
    """Fifty ranked pseudo-search-results, redundancy and noise included."""
    return fixture_path("web50_docs.jsonl")


def web50_query() -> Path:
    return fixture_path("web50_query.txt")


def web50_target() -> Path:
    """Reference answer whose token coverage the sweeps measure."""
    return fixture_path("web50_target.txt")


def questions20() -> Path:
    """Twenty question records: query, target answer, mini document set."""
    return fixture_path("questions20.jsonl")
