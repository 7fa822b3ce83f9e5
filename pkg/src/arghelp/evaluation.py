"""Classification metrics, McNemar's test, and usefulness-vs-argument data."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from arghelp.argscore import ArgScorer, ScoreCache, count_argumentative, score_reviews
from arghelp.corpus import Label, LabeledExample


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    @property
    def n(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def confusion(preds: Sequence[Label], gold: Sequence[Label]) -> ConfusionCounts:
    if len(preds) != len(gold):
        raise ValueError(f"length mismatch: {len(preds)} predictions, {len(gold)} gold labels")
    tp = fp = fn = tn = 0
    for p, g in zip(preds, gold):
        if p is Label.USEFUL:
            if g is Label.USEFUL:
                tp += 1
            else:
                fp += 1
        elif g is Label.USEFUL:
            fn += 1
        else:
            tn += 1
    return ConfusionCounts(tp, fp, fn, tn)


def _ratio(num: float, den: float) -> float:
    return num / den if den else 0.0


def metrics(c: ConfusionCounts) -> tuple[float, float, float, float]:
    """Accuracy, precision, recall, F1 with Useful as the positive class; 0/0 is 0.

    F1 is taken from the counts, ``2tp / (2tp + fp + fn)``, which equals the
    harmonic mean of P and R but is a single rounding away from exact, so it
    always lies between the rounded P and R.
    """
    a = _ratio(c.tp + c.tn, c.n)
    p = _ratio(c.tp, c.tp + c.fp)
    r = _ratio(c.tp, c.tp + c.fn)
    f1 = _ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn)
    return a, p, r, f1


@dataclass
class EvalReport:
    feature_set: str
    confusion: ConfusionCounts
    accuracy: float
    precision: float
    recall: float
    f1: float
    n_test: int
    best_hyperparams: dict | None = None
    category: str = ""

    @classmethod
    def from_predictions(cls, feature_set, preds, gold, best_hyperparams=None, category=""):
        c = confusion(preds, gold)
        return cls(feature_set, c, *metrics(c), c.n, best_hyperparams, category)

    def to_dict(self) -> dict:
        return {
            "category": self.category,
            "feature_set": self.feature_set,
            "confusion": {"tp": self.confusion.tp, "fp": self.confusion.fp,
                          "fn": self.confusion.fn, "tn": self.confusion.tn},
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "n_test": self.n_test,
            "best_hyperparams": self.best_hyperparams,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EvalReport":
        return cls(
            d["feature_set"], ConfusionCounts(**d["confusion"]), d["accuracy"], d["precision"],
            d["recall"], d["f1"], d["n_test"], d.get("best_hyperparams"), d.get("category", ""),
        )


# Regularized incomplete gamma: series for x < a + 1, Lentz continued fraction
# otherwise; both iterate until the relative term is below 1e-16, giving
# absolute error well under 1e-10 in the tails we use.
_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 10_000


def _gamma_p_series(a: float, x: float) -> float:
    term = total = 1.0 / a
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_q_contfrac(a: float, x: float) -> float:
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def gamma_q(a: float, x: float) -> float:
    """Upper regularized incomplete gamma ``Q(a, x)``."""
    if x < 0 or a <= 0:
        raise ValueError("need x >= 0 and a > 0")
    if x == 0:
        return 1.0
    if x < a + 1.0:
        return max(0.0, 1.0 - _gamma_p_series(a, x))
    return min(1.0, _gamma_q_contfrac(a, x))


def chi2_sf(x: float, df: int = 1) -> float:
    if x <= 0:
        return 1.0
    return gamma_q(df / 2.0, x / 2.0)


def binom_two_sided_half(k: int, n: int) -> float:
    """Exact two-sided binomial p-value for ``k`` successes in ``n`` trials at p = 1/2."""
    if n == 0:
        return 1.0
    lo = min(k, n - k)
    tail = sum(math.comb(n, i) for i in range(lo + 1))
    return float(min(Fraction(1), Fraction(2 * tail, 2**n)))


@dataclass(frozen=True)
class McNemarResult:
    b: int
    c: int
    statistic: float
    p_value: float
    method: str

    def to_dict(self) -> dict:
        return {"b": self.b, "c": self.c, "statistic": self.statistic,
                "p_value": self.p_value, "method": self.method}


EXACT_BELOW = 25


def mcnemar_from_counts(b: int, c: int) -> McNemarResult:
    """Continuity-corrected chi-square when ``b + c >= 25``, else the exact binomial test."""
    n = b + c
    if n == 0:
        return McNemarResult(b, c, 0.0, 1.0, "exact_binomial")
    if n >= EXACT_BELOW:
        stat = (abs(b - c) - 1) ** 2 / n
        return McNemarResult(b, c, stat, chi2_sf(stat, 1), "chi2_cc")
    return McNemarResult(b, c, float(min(b, c)), binom_two_sided_half(b, n), "exact_binomial")


def mcnemar(preds_a: Sequence[Label], preds_b: Sequence[Label], gold: Sequence[Label]) -> McNemarResult:
    """``b`` counts items only A gets right, ``c`` items only B gets right."""
    if not (len(preds_a) == len(preds_b) == len(gold)) or not gold:
        raise ValueError("prediction vectors must be non-empty and equally long")
    b = c = 0
    for pa, pb, g in zip(preds_a, preds_b, gold):
        ok_a, ok_b = pa == g, pb == g
        if ok_a and not ok_b:
            b += 1
        elif ok_b and not ok_a:
            c += 1
    return mcnemar_from_counts(b, c)


def pearson_r(xs: Sequence[float], ys: Sequence[float]) -> float | None:
    """Pearson correlation, or None when either axis has zero variance."""
    n = len(xs)
    if n != len(ys):
        raise ValueError("length mismatch")
    if n < 2:
        return None
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    syy = math.fsum((y - my) ** 2 for y in ys)
    if sxx == 0 or syy == 0:
        return None
    return max(-1.0, min(1.0, sxy / math.sqrt(sxx * syy)))


def figure1_data(
    examples: Sequence[LabeledExample],
    scorer: ArgScorer | None,
    cache: ScoreCache | None = None,
    threshold: float = 0.0,
    jobs: int = 1,
) -> tuple[list[tuple[int, float]], float | None]:
    """Per review: (number of argumentative sentences, usefulness ratio), and their correlation."""
    scores = score_reviews(((ex.id, ex.review.text) for ex in examples), scorer, cache, jobs=jobs)
    points = [(count_argumentative(scores[ex.id], threshold), ex.usefulness_ratio) for ex in examples]
    r = pearson_r([p[0] for p in points], [p[1] for p in points])
    return points, r


def figure1_csv(points: Sequence[tuple[int, float]]) -> str:
    lines = ["count_above0,usefulness_ratio"]
    lines += [f"{c},{r!r}" for c, r in points]
    return "\n".join(lines) + "\n"
