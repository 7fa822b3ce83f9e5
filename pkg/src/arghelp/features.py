"""Per-review feature vectors for the five ablation configurations.

Each block (text, argument statistics) is L2-normalized on its own and the
blocks are concatenated text-first. The result is not renormalized.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from arghelp.argscore import ArgFeatures, ArgScorer, ScoreCache, compute_arg_features, score_reviews
from arghelp.corpus import Label, LabeledExample
from arghelp.textproc import SparseVector, TextVectorizer, concat, l2_normalize

ARG_DIM = 12


class FeatureSet(str, enum.Enum):
    M = "M"
    BOW = "BoW"
    BOW_M = "BoW+M"
    TFIDF = "TF-IDF"
    TFIDF_M = "TF-IDF+M"

    @property
    def text_kind(self) -> str | None:
        if self in (FeatureSet.BOW, FeatureSet.BOW_M):
            return "bow"
        if self in (FeatureSet.TFIDF, FeatureSet.TFIDF_M):
            return "tfidf"
        return None

    @property
    def uses_args(self) -> bool:
        return self in (FeatureSet.M, FeatureSet.BOW_M, FeatureSet.TFIDF_M)

    @classmethod
    def parse(cls, name: str) -> "FeatureSet":
        key = name.strip().lower().replace(" ", "").replace("_", "").replace("-", "")
        for fs in cls:
            if fs.value.lower().replace("-", "") == key or fs.name.lower().replace("_", "") == key:
                return fs
        aliases = {"bowplusm": cls.BOW_M, "tfidfplusm": cls.TFIDF_M}
        if key in aliases:
            return aliases[key]
        raise ValueError(f"unknown feature set {name!r}")


ALL_FEATURE_SETS = (FeatureSet.M, FeatureSet.BOW, FeatureSet.BOW_M, FeatureSet.TFIDF, FeatureSet.TFIDF_M)


class AssemblyError(ValueError):
    pass


@dataclass(frozen=True)
class AssembledExample:
    vector: SparseVector
    label: Label
    review_id: str
    feature_set: FeatureSet


def arg_block(feats: ArgFeatures) -> SparseVector:
    return SparseVector.from_dense(feats.to_array())


def assemble(
    example: LabeledExample,
    text_vec: SparseVector | None,
    arg_feats: ArgFeatures | None,
    feature_set: FeatureSet,
) -> AssembledExample:
    blocks = []
    if feature_set.text_kind is not None:
        if text_vec is None:
            raise AssemblyError(f"{feature_set.value} needs the text block ({example.id})")
        blocks.append(l2_normalize(text_vec))
    if feature_set.uses_args:
        if arg_feats is None:
            raise AssemblyError(f"{feature_set.value} needs the M block ({example.id})")
        blocks.append(l2_normalize(arg_block(arg_feats)))
    vec = blocks[0] if len(blocks) == 1 else concat(blocks)
    return AssembledExample(vec, example.label, example.id, feature_set)


def arg_features_for(
    examples: Sequence[LabeledExample],
    scorer: ArgScorer | None,
    cache: ScoreCache | None = None,
    threshold: float = 0.0,
    jobs: int = 1,
    skip_errors: bool = False,
) -> dict[str, ArgFeatures]:
    scores = score_reviews(
        ((ex.id, ex.review.text) for ex in examples), scorer, cache, jobs=jobs, skip_errors=skip_errors
    )
    return {rid: compute_arg_features(s, threshold) for rid, s in scores.items()}


def assemble_corpus(
    examples: Sequence[LabeledExample],
    vectorizer: TextVectorizer | None,
    feature_set: FeatureSet,
    scorer: ArgScorer | None = None,
    cache: ScoreCache | None = None,
    arg_feats: dict[str, ArgFeatures] | None = None,
    threshold: float = 0.0,
    skip_errors: bool = False,
) -> list[AssembledExample]:
    """One assembled vector per example, in input order.

    Argument features come from ``arg_feats`` if given, else from the cache or
    the scorer. Examples whose scoring failed are dropped when ``skip_errors``.
    """
    kind = feature_set.text_kind
    if kind is not None and vectorizer is None:
        raise AssemblyError(f"{feature_set.value} needs a fitted text vectorizer")
    if feature_set.uses_args and arg_feats is None:
        arg_feats = arg_features_for(examples, scorer, cache, threshold, skip_errors=skip_errors)
    out = []
    for ex in examples:
        text_vec = None
        if kind == "bow":
            text_vec = vectorizer.bow(ex.review.text)
        elif kind == "tfidf":
            text_vec = vectorizer.tfidf(ex.review.text)
        feats = None
        if feature_set.uses_args:
            feats = arg_feats.get(ex.id)
            if feats is None and skip_errors:
                continue
        out.append(assemble(ex, text_vec, feats, feature_set))
    return out


def to_sparse_text(examples: Iterable[AssembledExample]) -> str:
    """Sparse text export: ``<+1|-1> index:value ...`` per line, 0-based indices."""
    lines = []
    for ex in examples:
        parts = [f"{ex.label.sign:+d}"]
        parts.extend(f"{i}:{v!r}" for i, v in ex.vector.entries)
        lines.append(" ".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")
