import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from arghelp.argscore import FixedScorer, LexiconScorer
from arghelp.corpus import Label, LabeledExample, Review
from arghelp.evaluation import (
    ConfusionCounts,
    EvalReport,
    binom_two_sided_half,
    chi2_sf,
    confusion,
    figure1_csv,
    figure1_data,
    gamma_q,
    mcnemar,
    mcnemar_from_counts,
    metrics,
    pearson_r,
)

from oracles import chi2_sf_df1

U, N = Label.USEFUL, Label.NOT_USEFUL
labels = st.sampled_from([U, N])


def test_confusion_examples():
    assert confusion([U, U, N], [U, U, N]) == ConfusionCounts(2, 0, 0, 1)
    assert confusion([U, U, U], [N, N, N]) == ConfusionCounts(0, 3, 0, 0)
    with pytest.raises(ValueError):
        confusion([U], [])


def test_confusion_random_recount():
    rng = np.random.default_rng(0)
    preds = [U if x else N for x in rng.random(50) < 0.5]
    gold = [U if x else N for x in rng.random(50) < 0.5]
    pairs = list(zip(preds, gold))
    expected = ConfusionCounts(pairs.count((U, U)), pairs.count((U, N)), pairs.count((N, U)), pairs.count((N, N)))
    assert confusion(preds, gold) == expected


def test_metric_examples():
    a, p, r, f1 = metrics(ConfusionCounts(3, 1, 2, 4))
    assert (a, p, r) == (0.7, 0.75, 0.6)
    assert f1 == pytest.approx(2 / 3, abs=1e-4)
    assert metrics(ConfusionCounts(0, 0, 0, 10)) == (1.0, 0.0, 0.0, 0.0)
    assert metrics(ConfusionCounts(7, 0, 0, 0)) == (1.0, 1.0, 1.0, 1.0)


@given(st.integers(0, 500), st.integers(0, 500), st.integers(0, 500), st.integers(0, 500))
def test_metric_identities(tp, fp, fn, tn):
    if tp + fp + fn + tn == 0:
        return
    a, p, r, f1 = metrics(ConfusionCounts(tp, fp, fn, tn))
    assert a == (tp + tn) / (tp + fp + fn + tn)
    assert p == (tp / (tp + fp) if tp + fp else 0.0)
    assert r == (tp / (tp + fn) if tp + fn else 0.0)
    assert f1 == (2 * tp / (2 * tp + fp + fn) if tp else 0.0)
    if p + r > 0:
        # the harmonic-mean form agrees up to its own rounding
        assert math.isclose(f1, 2 * p * r / (p + r), rel_tol=4e-16)
        assert min(p, r) <= f1 <= max(p, r)


def test_report_round_trip_recomputes_bit_for_bit():
    rep = EvalReport.from_predictions("BoW", [U, N, U, U], [U, N, N, U], {"alpha": 1e-4}, "Music")
    back = EvalReport.from_dict(json.loads(json.dumps(rep.to_dict())))
    assert back == rep
    assert metrics(back.confusion) == (back.accuracy, back.precision, back.recall, back.f1)


@pytest.mark.parametrize("x", [0.0, 1e-8, 0.025, 0.5, 1.0, 3.84, 10.0, 40.0, 120.0])
def test_chi2_sf_df1_matches_oracles(x):
    assert abs(chi2_sf(x) - chi2_sf_df1(x)) < 1e-10
    assert abs(chi2_sf(x) - stats.chi2.sf(x, 1)) < 1e-10


@given(st.floats(1e-6, 200), st.integers(1, 30))
def test_chi2_sf_matches_scipy(x, df):
    assert abs(chi2_sf(x, df) - stats.chi2.sf(x, df)) < 1e-10


@given(st.floats(0.1, 50), st.floats(0, 100))
def test_gamma_q_matches_scipy(a, x):
    from scipy.special import gammaincc
    assert abs(gamma_q(a, x) - gammaincc(a, x)) < 1e-10


def test_mcnemar_worked_examples():
    r = mcnemar_from_counts(10, 0)
    assert r.method == "exact_binomial" and abs(r.p_value - 2 * 0.5**10) < 1e-12
    assert abs(r.p_value - 0.001953) < 1e-6
    r = mcnemar_from_counts(20, 20)
    assert r.method == "chi2_cc" and r.statistic == pytest.approx(0.025, abs=1e-12)
    assert abs(r.p_value - 0.874) < 1e-3
    assert mcnemar_from_counts(7, 7).p_value == 1.0
    assert mcnemar_from_counts(0, 0).p_value == 1.0


@given(st.integers(0, 60), st.integers(0, 60))
def test_exact_branch_matches_scipy(b, c):
    if 0 < b + c < 25:
        assert abs(mcnemar_from_counts(b, c).p_value - stats.binomtest(b, b + c, 0.5).pvalue) < 1e-12


def test_binom_two_sided_is_capped():
    assert binom_two_sided_half(3, 6) == 1.0


@given(st.lists(st.tuples(labels, labels, labels), min_size=1, max_size=80))
def test_mcnemar_symmetry_and_range(triples):
    a, b, g = (list(x) for x in zip(*triples))
    ab, ba = mcnemar(a, b, g), mcnemar(b, a, g)
    assert (ab.statistic, ab.p_value) == (ba.statistic, ba.p_value)
    assert 0.0 <= ab.p_value <= 1.0


def test_identical_classifiers():
    r = mcnemar([U, N, U], [U, N, U], [U, U, N])
    assert (r.b, r.c, r.p_value) == (0, 0, 1.0)


def test_pearson():
    assert pearson_r([0, 10], [0.0, 1.0]) == 1.0
    assert pearson_r([1, 1, 1], [0.1, 0.5, 0.9]) is None
    assert pearson_r([1], [1.0]) is None
    rng = np.random.default_rng(3)
    x, y = rng.normal(size=40), rng.normal(size=40)
    assert pearson_r(x.tolist(), y.tolist()) == pytest.approx(stats.pearsonr(x, y)[0], abs=1e-12)


def _ex(i, text, h):
    return LabeledExample(Review(f"r{i}", "C", text, h, 100), h / 100, U if h >= 70 else N)


def test_figure_with_fixed_scorer():
    exs = [_ex(i, "One. Two. Three.", 50 + i) for i in range(5)]
    points, r = figure1_data(exs, FixedScorer())
    assert [p[0] for p in points] == [0] * 5 and r is None


def test_figure_counts_bounded(sample_examples):
    from arghelp.argscore import segment_sentences
    points, r = figure1_data(sample_examples, LexiconScorer())
    assert len(points) == len(sample_examples)
    for (count, ratio), ex in zip(points, sample_examples):
        assert 0 <= count <= len(segment_sentences(ex.review.text))
        assert ratio == ex.usefulness_ratio
    xs, ys = zip(*points)
    assert r == pytest.approx(stats.pearsonr(xs, ys)[0], abs=1e-12)
    assert r > 0


def test_figure_csv():
    assert figure1_csv([(2, 0.5)]) == "count_above0,usefulness_ratio\n2,0.5\n"
    assert figure1_csv([]) == "count_above0,usefulness_ratio\n"
