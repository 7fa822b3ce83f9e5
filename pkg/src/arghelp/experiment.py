"""Ablation table: train and evaluate each feature set on a shared split."""

from __future__ import annotations

import csv
import io
import json
import logging
from collections.abc import Sequence
from dataclasses import asdict, dataclass, field

from arghelp.argscore import ArgFeatures, ArgScorer, ScoreCache
from arghelp.corpus import Label, LabeledExample, PipelineConfig
from arghelp.evaluation import EvalReport, McNemarResult, mcnemar
from arghelp.features import (
    ALL_FEATURE_SETS,
    FeatureSet,
    arg_features_for,
    assemble_corpus,
)
from arghelp.model import CSR, CVResult, Hyperparams, cross_validate, default_grid
from arghelp.textproc import TextVectorizer

log = logging.getLogger(__name__)

MCNEMAR_PAIRS = (
    (FeatureSet.BOW_M, FeatureSet.BOW),
    (FeatureSet.TFIDF_M, FeatureSet.TFIDF),
)


@dataclass
class TableResult:
    reports: list[EvalReport]
    significance: dict[str, McNemarResult]
    predictions: dict[FeatureSet, list[Label]] = field(repr=False)
    cv: dict[FeatureSet, CVResult] = field(repr=False)
    vectorizer: TextVectorizer | None = field(default=None, repr=False)

    def report(self, fs: FeatureSet) -> EvalReport:
        for r in self.reports:
            if r.feature_set == fs.value:
                return r
        raise KeyError(fs)


def run_table(
    train: Sequence[LabeledExample],
    test: Sequence[LabeledExample],
    scorer: ArgScorer | None = None,
    grid: Sequence[Hyperparams] | None = None,
    cfg: PipelineConfig | None = None,
    feature_sets: Sequence[FeatureSet] = ALL_FEATURE_SETS,
    cache: ScoreCache | None = None,
    vectorizer: TextVectorizer | None = None,
    stopwords: frozenset[str] | None = None,
    threshold: float = 0.0,
    jobs: int = 1,
    category: str = "",
) -> TableResult:
    """Cross-validate, refit and test every requested feature set.

    The text vectorizer is fitted on ``train`` only. McNemar's test is run for
    BoW+M vs BoW and TF-IDF+M vs TF-IDF whenever both arms are present.
    """
    cfg = cfg or PipelineConfig()
    grid = list(grid) if grid is not None else default_grid(seed=cfg.seed)
    feature_sets = list(dict.fromkeys(feature_sets))

    if vectorizer is None and any(fs.text_kind for fs in feature_sets):
        vectorizer = TextVectorizer.fit(
            (ex.review.text for ex in train), cfg.min_token_count, stopwords
        )
    arg_feats: dict[str, ArgFeatures] | None = None
    if any(fs.uses_args for fs in feature_sets):
        arg_feats = arg_features_for(list(train) + list(test), scorer, cache, threshold, jobs=jobs)

    gold = [ex.label for ex in test]
    reports, preds, cvs = [], {}, {}
    for fs in feature_sets:
        tr = assemble_corpus(train, vectorizer, fs, arg_feats=arg_feats)
        te = assemble_corpus(test, vectorizer, fs, arg_feats=arg_feats)
        cv = cross_validate(tr, grid, k=cfg.cv_folds, seed=cfg.seed, jobs=jobs)
        X_te = CSR.from_examples(te, cv.model.dimension)
        preds[fs] = cv.model.predict_labels(X_te)
        cvs[fs] = cv
        reports.append(
            EvalReport.from_predictions(fs.value, preds[fs], gold, asdict(cv.best), category)
        )
        log.info("%s %s: acc=%.3f", category, fs.value, reports[-1].accuracy)

    sig = {}
    for a, b in MCNEMAR_PAIRS:
        if a in preds and b in preds:
            sig[f"{a.value} vs {b.value}"] = mcnemar(preds[a], preds[b], gold)
    return TableResult(reports, sig, preds, cvs, vectorizer)


CSV_FIELDS = ("Category", "Data", "A", "P", "R", "F1", "n_test")


def table_csv(reports: Sequence[EvalReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in reports:
        w.writerow(
            [r.category, r.feature_set, f"{r.accuracy:.3f}", f"{r.precision:.3f}",
             f"{r.recall:.3f}", f"{r.f1:.3f}", r.n_test]
        )
    return buf.getvalue()


def table_json(reports: Sequence[EvalReport], significance: dict[str, dict]) -> str:
    return json.dumps(
        {"reports": [r.to_dict() for r in reports], "mcnemar": significance},
        indent=2,
        sort_keys=True,
    ) + "\n"
