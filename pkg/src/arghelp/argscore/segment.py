"""Rule-based sentence segmentation.

A split happens after a run of ``.``, ``!`` or ``?`` (plus any closing quotes
or brackets) when it is followed by whitespace and then an uppercase letter
or a digit. A terminator that ends a known abbreviation never splits.
"""

from __future__ import annotations

import re
from functools import lru_cache

from arghelp._resources import data_lines

_BOUNDARY = re.compile(r"[.!?]+[\"'”’)\]]*(\s+)")


@lru_cache(maxsize=None)
def abbreviations() -> frozenset[str]:
    return frozenset(a.lower() for a in data_lines("abbreviations.txt"))


def _ends_with_abbreviation(chunk: str) -> bool:
    words = chunk.split()
    return bool(words) and words[-1].lower().lstrip("(\"'") in abbreviations()


def segment_sentences(text: str) -> list[str]:
    sentences = []
    start = 0
    for m in _BOUNDARY.finditer(text):
        nxt = text[m.end() : m.end() + 1]
        if not nxt or not (nxt.isupper() or nxt.isdigit()):
            continue
        candidate = text[start : m.start(1)]
        if _ends_with_abbreviation(candidate):
            continue
        if candidate.strip():
            sentences.append(candidate.strip())
        start = m.end()
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences
