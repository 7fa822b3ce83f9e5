"""Vocabulary construction and BoW / TF-IDF vectorization."""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from arghelp.textproc.sparse import SparseVector
from arghelp.textproc.tokens import default_stopwords, preprocess


class VocabularyError(ValueError):
    pass


@dataclass(frozen=True)
class Vocabulary:
    token_to_index: dict[str, int]
    corpus_counts: dict[str, int]

    @property
    def size(self) -> int:
        return len(self.token_to_index)

    def __len__(self) -> int:
        return self.size

    def __contains__(self, token: str) -> bool:
        return token in self.token_to_index

    @cached_property
    def _by_index(self) -> tuple[str, ...]:
        return tuple(sorted(self.token_to_index, key=self.token_to_index.__getitem__))

    def tokens(self) -> list[str]:
        return list(self._by_index)

    def to_json(self) -> str:
        rows = [[t, self.token_to_index[t], self.corpus_counts[t]] for t in self.tokens()]
        return json.dumps(rows, ensure_ascii=False, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Vocabulary":
        rows = json.loads(text)
        return cls({t: int(i) for t, i, _ in rows}, {t: int(c) for t, _, c in rows})

    def checksum(self) -> str:
        return hashlib.sha256(self.to_json().encode("utf-8")).hexdigest()


def build_vocabulary(
    train_docs: Iterable[Sequence[str]], stopwords: Iterable[str] = (), min_count: int = 6
) -> Vocabulary:
    """Keep tokens seen at least ``min_count`` times overall and not in ``stopwords``.

    Columns are assigned in lexicographic token order.
    """
    stop = frozenset(stopwords)
    counts: Counter[str] = Counter()
    for doc in train_docs:
        counts.update(doc)
    kept = sorted(t for t, c in counts.items() if c >= min_count and t not in stop)
    if not kept:
        raise VocabularyError(
            f"empty vocabulary (min_count={min_count}, {len(counts)} distinct tokens)"
        )
    return Vocabulary({t: i for i, t in enumerate(kept)}, {t: counts[t] for t in kept})


def document_frequencies(docs: Iterable[Sequence[str]], vocab: Vocabulary) -> dict[str, int]:
    df: Counter[str] = Counter()
    for doc in docs:
        df.update(t for t in set(doc) if t in vocab.token_to_index)
    return dict(df)


def _term_counts(doc: Sequence[str], vocab: Vocabulary) -> dict[int, int]:
    tf: dict[int, int] = {}
    lookup = vocab.token_to_index
    for tok in doc:
        i = lookup.get(tok)
        if i is not None:
            tf[i] = tf.get(i, 0) + 1
    return tf


def vectorize_bow(doc: Sequence[str], vocab: Vocabulary) -> SparseVector:
    return SparseVector.from_dict(_term_counts(doc, vocab), vocab.size)


def idf(df: int, n_docs: int) -> float:
    """Smoothed inverse document frequency, ``ln((1 + N) / (1 + df)) + 1``."""
    return math.log((1 + n_docs) / (1 + df)) + 1.0


def vectorize_tfidf(
    doc: Sequence[str], vocab: Vocabulary, doc_freqs: dict[str, int], n_docs: int
) -> SparseVector:
    tokens = vocab._by_index
    weighted = {
        i: c * idf(doc_freqs.get(tokens[i], 0), n_docs) for i, c in _term_counts(doc, vocab).items()
    }
    return SparseVector.from_dict(weighted, vocab.size)


@dataclass
class TextVectorizer:
    """Frozen text pipeline fitted on the training reviews only."""

    vocab: Vocabulary
    doc_freqs: dict[str, int]
    n_docs: int
    stopwords: frozenset[str] = field(default_factory=default_stopwords)

    @classmethod
    def fit(
        cls,
        texts: Iterable[str],
        min_count: int = 6,
        stopwords: frozenset[str] | None = None,
    ) -> "TextVectorizer":
        stop = default_stopwords() if stopwords is None else frozenset(stopwords)
        docs = [preprocess(t, stop) for t in texts]
        vocab = build_vocabulary(docs, stop, min_count)
        return cls(vocab, document_frequencies(docs, vocab), len(docs), stop)

    @property
    def dimension(self) -> int:
        return self.vocab.size

    def tokens(self, text: str) -> list[str]:
        return preprocess(text, self.stopwords)

    def bow(self, text: str) -> SparseVector:
        return vectorize_bow(self.tokens(text), self.vocab)

    def tfidf(self, text: str) -> SparseVector:
        return vectorize_tfidf(self.tokens(text), self.vocab, self.doc_freqs, self.n_docs)

    def idf_vector(self) -> np.ndarray:
        return np.array([idf(self.doc_freqs.get(t, 0), self.n_docs) for t in self.vocab.tokens()])
