"""Smoothed TF-IDF vectors and cosine overlap between token sequences."""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterable, Sequence


class TfIdfModel:
    """Document-frequency statistics over a corpus of token sequences.

    idf is smoothed so every token, seen or not, gets positive weight:

        idf(t) = ln((1 + N) / (1 + df(t))) + 1

    where N is the number of fitted documents. A token never seen during
    fitting has df = 0 and falls out of the same formula (ln(1+N) + 1),
    which is also the largest idf the model can assign.
    """

    def __init__(self, documents: Iterable[Sequence[str]]):
        self._df: Counter[str] = Counter()
        self._n_docs = 0
        for doc in documents:
            self._n_docs += 1
            self._df.update(set(doc))
        if self._n_docs == 0:
            raise ValueError("cannot fit TF-IDF statistics on an empty corpus")

    @property
    def n_docs(self) -> int:
        return self._n_docs

    @property
    def vocabulary(self) -> dict[str, int]:
        """Fitted tokens mapped to dense indices (sorted token order)."""
        return {t: i for i, t in enumerate(sorted(self._df))}

    def df(self, token: str) -> int:
        return self._df.get(token, 0)

    def idf(self, token: str) -> float:
        return math.log((1 + self._n_docs) / (1 + self._df.get(token, 0))) + 1.0

    def vector(self, tokens: Sequence[str]) -> dict[str, float]:
        """Sparse tf*idf vector for a token sequence (tf = raw count)."""
        counts = Counter(tokens)
        return {t: c * self.idf(t) for t, c in counts.items()}

    def overlap(self, a: Sequence[str], b: Sequence[str]) -> float:
        """Cosine similarity of the tf-idf vectors of ``a`` and ``b``.

        Always in [0, 1]. Returns exactly 0.0 when either side is empty or
        the sequences share no tokens, and exactly 1.0 when the two token
        multisets are equal, regardless of order. Symmetric bit-for-bit:
        accumulation runs over sorted token keys so argument order cannot
        change the floating-point result.
        """
        if not a or not b:
            return 0.0
        ca, cb = Counter(a), Counter(b)
        if ca == cb:
            return 1.0
        dot = 0.0
        norm_a = 0.0
        norm_b = 0.0
        for t in sorted(ca.keys() | cb.keys()):
            w = self.idf(t)
            va = ca.get(t, 0) * w
            vb = cb.get(t, 0) * w
            dot += va * vb
            norm_a += va * va
            norm_b += vb * vb
        if dot == 0.0:
            return 0.0
        sim = dot / math.sqrt(norm_a * norm_b)
        return min(1.0, max(0.0, sim))


def fit(docs: Iterable[Sequence[str]]) -> TfIdfModel:
    """Fit document-frequency statistics over token sequences.

    Raises ValueError on an empty corpus.
    """
    return TfIdfModel(docs)
