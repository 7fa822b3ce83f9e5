"""Tokenization and stopword handling.

Tokens are maximal runs of Unicode letters, lowercased. Digits, underscores,
punctuation and apostrophes all act as boundaries, so ``"Cream's"`` yields
``cream`` and ``s``.
"""

from __future__ import annotations

import re
from functools import lru_cache

from arghelp._resources import data_lines
from arghelp.textproc.stemmer import stem

_LETTER_RUN = re.compile(r"[^\W\d_]+")


def tokenize(text: str) -> list[str]:
    return [m.group(0).lower() for m in _LETTER_RUN.finditer(text)]


@lru_cache(maxsize=None)
def default_stopwords() -> frozenset[str]:
    return frozenset(data_lines("stopwords_en.txt"))


def load_stopwords(path) -> frozenset[str]:
    """One word per line; ``#`` comments allowed. Lowercased to match ``tokenize``."""
    with open(path, encoding="utf-8") as fh:
        return frozenset(w.strip().lower() for w in fh if w.strip() and not w.startswith("#"))


def preprocess(text: str, stopwords: frozenset[str] | None = None) -> list[str]:
    """Tokenize, drop stopwords, stem."""
    if stopwords is None:
        stopwords = default_stopwords()
    return [stem(t) for t in tokenize(text) if t not in stopwords]
