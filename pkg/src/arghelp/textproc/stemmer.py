"""Snowball English (Porter2) stemmer.

Regions R1/R2 are tracked as start offsets into the word; a suffix is
"in R1" when it starts at or after the R1 offset.
"""

from __future__ import annotations

from functools import lru_cache

VOWELS = frozenset("aeiouy")
DOUBLES = ("bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt")
LI_ENDINGS = frozenset("cdeghkmnrt")

EXCEPTIONS = {
    "skis": "ski",
    "skies": "sky",
    "dying": "die",
    "lying": "lie",
    "tying": "tie",
    "idly": "idl",
    "gently": "gentl",
    "ugly": "ugli",
    "early": "earli",
    "only": "onli",
    "singly": "singl",
    "sky": "sky",
    "news": "news",
    "howe": "howe",
    "atlas": "atlas",
    "cosmos": "cosmos",
    "bias": "bias",
    "andes": "andes",
}
# left untouched once step 1a has run
POST_1A_INVARIANT = frozenset(
    ["inning", "outing", "canning", "herring", "earring", "proceed", "exceed", "succeed"]
)

STEP2 = (
    ("ization", "ize"),
    ("ational", "ate"),
    ("fulness", "ful"),
    ("ousness", "ous"),
    ("iveness", "ive"),
    ("tional", "tion"),
    ("biliti", "ble"),
    ("lessli", "less"),
    ("entli", "ent"),
    ("ation", "ate"),
    ("alism", "al"),
    ("aliti", "al"),
    ("ousli", "ous"),
    ("iviti", "ive"),
    ("fulli", "ful"),
    ("enci", "ence"),
    ("anci", "ance"),
    ("abli", "able"),
    ("izer", "ize"),
    ("ator", "ate"),
    ("alli", "al"),
    ("bli", "ble"),
    ("ogi", "og"),
    ("li", ""),
)
STEP3 = (
    ("ational", "ate"),
    ("tional", "tion"),
    ("alize", "al"),
    ("icate", "ic"),
    ("iciti", "ic"),
    ("ative", ""),
    ("ical", "ic"),
    ("ness", ""),
    ("ful", ""),
)
STEP4 = (
    "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent",
    "ism", "ate", "iti", "ous", "ive", "ize", "ion", "al", "er", "ic",
)


def _is_vowel(ch: str) -> bool:
    return ch in VOWELS


def _region_start(word: str, start: int) -> int:
    for i in range(max(start, 1), len(word)):
        if not _is_vowel(word[i]) and _is_vowel(word[i - 1]):
            return i + 1
    return len(word)


def _regions(word: str) -> tuple[int, int]:
    for prefix in ("gener", "commun", "arsen"):
        if word.startswith(prefix):
            r1 = len(prefix)
            break
    else:
        r1 = _region_start(word, 1)
    return r1, _region_start(word, r1 + 1)


def _ends_short_syllable(word: str) -> bool:
    n = len(word)
    if n == 2:
        return _is_vowel(word[0]) and not _is_vowel(word[1])
    if n >= 3:
        return (
            not _is_vowel(word[-3])
            and _is_vowel(word[-2])
            and not _is_vowel(word[-1])
            and word[-1] not in "wxY"
        )
    return False


def _has_vowel(s: str) -> bool:
    return any(_is_vowel(c) for c in s)


def _step1a(word: str) -> str:
    if word.endswith("sses"):
        return word[:-2]
    if word.endswith(("ied", "ies")):
        return word[:-2] if len(word) > 4 else word[:-1]
    if word.endswith(("us", "ss")):
        return word
    if word.endswith("s"):
        if _has_vowel(word[:-2]):
            return word[:-1]
    return word


def _step1b(word: str, r1: int) -> str:
    for suffix in ("eedly", "ingly", "edly", "eed", "ing", "ed"):
        if not word.endswith(suffix):
            continue
        stem = word[: -len(suffix)]
        if suffix in ("eed", "eedly"):
            if len(stem) >= r1:
                return stem + "ee"
            return word
        if not _has_vowel(stem):
            return word
        if stem.endswith(("at", "bl", "iz")):
            return stem + "e"
        if stem.endswith(DOUBLES):
            return stem[:-1]
        if r1 >= len(stem) and _ends_short_syllable(stem):
            return stem + "e"
        return stem
    return word


def _step1c(word: str) -> str:
    if len(word) > 2 and word[-1] in "yY" and not _is_vowel(word[-2]):
        return word[:-1] + "i"
    return word


def _step2(word: str, r1: int) -> str:
    for suffix, repl in STEP2:
        if not word.endswith(suffix):
            continue
        start = len(word) - len(suffix)
        if start < r1:
            return word
        if suffix == "ogi" and word[start - 1 : start] != "l":
            return word
        if suffix == "li" and word[start - 1 : start] not in LI_ENDINGS:
            return word
        return word[:start] + repl
    return word


def _step3(word: str, r1: int, r2: int) -> str:
    for suffix, repl in STEP3:
        if not word.endswith(suffix):
            continue
        start = len(word) - len(suffix)
        if start < r1:
            return word
        if suffix == "ative" and start < r2:
            return word
        return word[:start] + repl
    return word


def _step4(word: str, r2: int) -> str:
    for suffix in STEP4:
        if not word.endswith(suffix):
            continue
        start = len(word) - len(suffix)
        if start < r2:
            return word
        if suffix == "ion" and word[start - 1 : start] not in ("s", "t"):
            return word
        return word[:start]
    return word


def _step5(word: str, r1: int, r2: int) -> str:
    last = len(word) - 1
    if word.endswith("l"):
        if last >= r2 and word[-2:] == "ll":
            return word[:-1]
        return word
    if word.endswith("e"):
        if last >= r2:
            return word[:-1]
        if last >= r1 and not _ends_short_syllable(word[:-1]):
            return word[:-1]
    return word


@lru_cache(maxsize=65536)
def stem(token: str) -> str:
    """Return the Snowball English stem of a lowercase token."""
    word = token
    if len(word) <= 2:
        return word
    if word in EXCEPTIONS:
        return EXCEPTIONS[word]

    word = word.replace("’", "'").replace("‘", "'").replace("‛", "'")
    if word.startswith("'"):
        word = word[1:]
    if word.startswith("y"):
        word = "Y" + word[1:]
    chars = list(word)
    for i in range(1, len(chars)):
        if chars[i] == "y" and _is_vowel(chars[i - 1]):
            chars[i] = "Y"
    word = "".join(chars)

    r1, r2 = _regions(word)

    for suffix in ("'s'", "'s", "'"):
        if word.endswith(suffix):
            word = word[: -len(suffix)]
            break

    word = _step1a(word)
    if word in POST_1A_INVARIANT:
        return word

    word = _step1b(word, r1)
    word = _step1c(word)
    word = _step2(word, r1)
    word = _step3(word, r1, r2)
    word = _step4(word, r2)
    word = _step5(word, r1, r2)
    return word.replace("Y", "y")
