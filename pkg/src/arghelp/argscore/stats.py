"""Review-level statistics over per-sentence claim / evidence scores."""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass

import numpy as np

CHANNELS = ("claim", "evidence", "argument")
STATS = ("mean", "max", "count", "pct")
FEATURE_NAMES = tuple(f"{c}_{s}" for c in CHANNELS for s in STATS)


@dataclass(frozen=True)
class SentenceScores:
    sentence_text: str
    claim_score: float
    evidence_score: float

    def __post_init__(self):
        if not (math.isfinite(self.claim_score) and math.isfinite(self.evidence_score)):
            raise ValueError(f"non-finite score for sentence {self.sentence_text!r}")


def argument_score(s: SentenceScores) -> float:
    """A sentence is argumentative when it holds a claim or an evidence: max of both."""
    return max(s.claim_score, s.evidence_score)


@dataclass(frozen=True)
class ArgFeatures:
    """The 12 statistics, in the fixed order of ``FEATURE_NAMES``."""

    claim_mean: float = 0.0
    claim_max: float = 0.0
    claim_count: float = 0.0
    claim_pct: float = 0.0
    evidence_mean: float = 0.0
    evidence_max: float = 0.0
    evidence_count: float = 0.0
    evidence_pct: float = 0.0
    argument_mean: float = 0.0
    argument_max: float = 0.0
    argument_count: float = 0.0
    argument_pct: float = 0.0

    def to_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=np.float64)

    @classmethod
    def from_array(cls, arr) -> "ArgFeatures":
        return cls(*(float(x) for x in arr))


def _channel(values: list[float], threshold: float) -> tuple[float, float, float, float]:
    n = len(values)
    above = sum(1 for v in values if v > threshold)
    return math.fsum(values) / n, max(values), float(above), above / n


def compute_arg_features(scores: list[SentenceScores], threshold: float = 0.0) -> ArgFeatures:
    """Mean, max, count above threshold and fraction above threshold per channel.

    An empty review yields all zeros.
    """
    if not scores:
        return ArgFeatures()
    claim = [s.claim_score for s in scores]
    evidence = [s.evidence_score for s in scores]
    argument = [argument_score(s) for s in scores]
    return ArgFeatures(
        *_channel(claim, threshold), *_channel(evidence, threshold), *_channel(argument, threshold)
    )


def count_argumentative(scores: list[SentenceScores], threshold: float = 0.0) -> int:
    return sum(1 for s in scores if argument_score(s) > threshold)
