"""Sentence-level argument scores and the 12 review-level statistics."""

from arghelp.argscore.cache import ScoreCache, cache_scores, lookup_scores, score_reviews
from arghelp.argscore.scorers import (
    ArgScorer,
    FixedScorer,
    LexiconScorer,
    RemoteConfig,
    RemoteScorer,
    ScoringError,
    make_scorer,
    score_sentences,
)
from arghelp.argscore.segment import segment_sentences
from arghelp.argscore.stats import (
    FEATURE_NAMES,
    ArgFeatures,
    SentenceScores,
    argument_score,
    compute_arg_features,
    count_argumentative,
)

__all__ = [
    "FEATURE_NAMES",
    "ArgFeatures",
    "ArgScorer",
    "FixedScorer",
    "LexiconScorer",
    "RemoteConfig",
    "RemoteScorer",
    "ScoreCache",
    "ScoringError",
    "SentenceScores",
    "argument_score",
    "cache_scores",
    "compute_arg_features",
    "count_argumentative",
    "lookup_scores",
    "make_scorer",
    "score_reviews",
    "score_sentences",
    "segment_sentences",
]
