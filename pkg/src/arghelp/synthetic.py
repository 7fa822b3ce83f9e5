"""Seeded generator of synthetic product reviews with planted argumentative signal.

Each review draws a usefulness ratio uniformly from [0.35, 1.0] and a vote
total from [75, 400]. The number of argumentative sentences is Poisson with
mean ``arg_base + arg_gain * s`` where ``s`` rescales the ratio to [0, 1], so
useful reviews carry more cue-bearing claims and evidence on average. Filler
sentences draw from a shared product vocabulary; a weak lexical signal (a
small shift between "detail" and "gush" words) gives plain BoW something to
learn as well. Every record is clearly marked synthetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

NOUNS = [
    "sound", "battery", "screen", "case", "cable", "remote", "speaker", "album", "track",
    "disc", "movie", "plot", "price", "design", "menu", "charger", "lens", "mix", "voice",
    "band", "story", "scene", "picture", "volume", "button", "box", "manual", "signal",
]
ADJECTIVES = [
    "solid", "cheap", "loud", "quiet", "bright", "slow", "fast", "heavy", "light", "clean",
    "muddy", "sharp", "soft", "warm", "thin", "sturdy", "flimsy", "smooth", "noisy", "clear",
]
VERBS = [
    "works", "lasts", "holds", "fits", "breaks", "sounds", "plays", "runs", "loads", "charges",
]
DETAILS = [
    "about six hours", "after two weeks", "at full volume", "on the second day",
    "with the old firmware", "in a small room", "under heavy use", "from the first track",
    "when the case is closed", "on both channels",
]
DETAIL_WORDS = ["frequency", "firmware", "bass", "tempo", "resolution", "warranty", "setup", "range"]
GUSH_WORDS = ["awesome", "love", "amazing", "cool", "wow", "super", "fun", "nice"]

# Cues made of stopwords only ("because", "that is why", "such as") are
# invisible to the text features; the rest carry a visible content word.
HIDDEN_CLAIMS = [
    "The {n} is {a} because it {v} {d}.",
    "The {n} {v} {d} because of the {n2}.",
    "The {n} should be {a}.",
    "That is why the {n} {v}.",
    "The {n2} is {a}, which is why the {n} {v}.",
    "The {n} is {a} so that the {n2} {v}.",
]
HIDDEN_EVIDENCE = [
    "It {v} {d}, such as the {n2}.",
    "The {n} and the {n2} are {a}, such as the {n} {v} {d}.",
]
VISIBLE_CLAIMS = [
    "I think the {n} is {a}.",
    "Therefore the {n} is {a}.",
]
VISIBLE_EVIDENCE = [
    "For example, the {n} {v} {d}.",
    "In my experience the {n} {v} {d}.",
    "Compared to the {n2}, the {n} is {a}.",
    "According to the manual the {n} {v} {d}.",
]
FILLER_TEMPLATES = [
    "The {n} is {a}.",
    "It {v} {d}.",
    "Got it for my brother.",
    "The {n} and the {n2} are {a}.",
    "It arrived on time.",
    "Packaging was {a}.",
    "The {n} {v}.",
    "Not much else to say about the {n}.",
    "The {w} is {a}.",
    "Really {w} {n}.",
]


@dataclass(frozen=True)
class SyntheticSpec:
    n_reviews: int = 4000
    seed: int = 7
    arg_base: float = 0.3
    arg_gain: float = 2.8
    filler_min: int = 3
    filler_max: int = 8
    lexical_shift: float = 0.6
    p_visible_cue: float = 0.15
    category: str = "Synthetic"


def _fill(template: str, rng: np.random.Generator, words: list[str]) -> str:
    return template.format(
        n=NOUNS[rng.integers(len(NOUNS))],
        n2=NOUNS[rng.integers(len(NOUNS))],
        a=ADJECTIVES[rng.integers(len(ADJECTIVES))],
        v=VERBS[rng.integers(len(VERBS))],
        d=DETAILS[rng.integers(len(DETAILS))],
        w=words[rng.integers(len(words))],
    )


def _review(idx: int, spec: SyntheticSpec, rng: np.random.Generator) -> dict:
    ratio_target = rng.uniform(0.35, 1.0)
    total = int(rng.integers(75, 401))
    helpful = int(round(ratio_target * total))
    s = (helpful / total - 0.35) / 0.65

    n_arg = int(rng.poisson(spec.arg_base + spec.arg_gain * s))
    n_fill = int(rng.integers(spec.filler_min, spec.filler_max + 1))
    p_detail = 0.5 + spec.lexical_shift * (s - 0.5) * 2
    sentences = []
    for _ in range(n_fill):
        words = DETAIL_WORDS if rng.random() < p_detail else GUSH_WORDS
        sentences.append(_fill(FILLER_TEMPLATES[rng.integers(len(FILLER_TEMPLATES))], rng, words))
    for _ in range(n_arg):
        claim = rng.random() < 0.55
        if rng.random() < spec.p_visible_cue:
            pool = VISIBLE_CLAIMS if claim else VISIBLE_EVIDENCE
        else:
            pool = HIDDEN_CLAIMS if claim else HIDDEN_EVIDENCE
        pos = int(rng.integers(len(sentences) + 1))
        sentences.insert(pos, _fill(pool[rng.integers(len(pool))], rng, DETAIL_WORDS))
    return {
        "reviewerID": f"SYN{idx:06d}",
        "asin": f"B{spec.seed:03d}{idx % 97:04d}",
        "reviewText": " ".join(sentences),
        "helpful": [helpful, total],
        "overall": float(rng.integers(1, 6)),
        "summary": "synthetic review",
        "synthetic": True,
    }


def generate_records(spec: SyntheticSpec = SyntheticSpec()) -> list[dict]:
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    return [_review(i, spec, rng) for i in range(spec.n_reviews)]


def generate_jsonl(spec: SyntheticSpec = SyntheticSpec()) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in generate_records(spec))


def generate_examples(spec: SyntheticSpec = SyntheticSpec(), min_votes: int = 75):
    """Labeled examples straight from the generator, skipping file I/O."""
    from arghelp.corpus import PipelineConfig, derive_label, parse_review_line

    cfg = PipelineConfig(min_votes=min_votes)
    out = []
    for n, rec in enumerate(generate_records(spec), start=1):
        ex = derive_label(parse_review_line(json.dumps(rec), n, spec.category), cfg)
        if ex is not None:
            out.append(ex)
    return out
