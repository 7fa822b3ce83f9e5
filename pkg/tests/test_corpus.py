import gzip
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arghelp.corpus import (
    Label,
    LabeledExample,
    PipelineConfig,
    Review,
    ReviewIntegrityError,
    ReviewParseError,
    SizingError,
    class_balance,
    derive_label,
    example_from_json,
    example_to_json,
    ingest,
    parse_review_line,
    read_labeled,
    review_to_json,
    sample_and_split,
    write_labeled,
)


def test_parse_maps_fields():
    r = parse_review_line('{"reviewText":"Great.","helpful":[7,10],"overall":5.0}')
    assert (r.text, r.helpful_votes, r.total_votes, r.rating) == ("Great.", 7, 10, 5.0)


def test_parse_zero_votes():
    r = parse_review_line('{"reviewText":"x","helpful":[0,0]}')
    assert (r.helpful_votes, r.total_votes) == (0, 0)


def test_helpful_above_total_is_integrity_error():
    with pytest.raises(ReviewIntegrityError):
        parse_review_line('{"reviewText":"x","helpful":[5,3]}')


@pytest.mark.parametrize("line", ["not json", "[1,2]", '{"reviewText":"x"}',
                                  '{"reviewText":"x","helpful":[1]}', '{"reviewText":"x","helpful":["a",2]}'])
def test_malformed_lines_raise(line):
    with pytest.raises(ReviewParseError):
        parse_review_line(line, 3)


def test_missing_text_parses_as_empty():
    assert parse_review_line('{"helpful":[1,2]}').text == ""


def test_parse_error_names_line():
    with pytest.raises(ReviewParseError) as err:
        parse_review_line("{", 17)
    assert err.value.line_no == 17
    assert "17" in str(err.value)


def _review(h, t, rid="r"):
    return Review(rid, "C", "some text", h, t)


@pytest.mark.parametrize("h,t,expected", [(70, 100, Label.USEFUL), (69, 100, Label.NOT_USEFUL),
                                          (75, 75, Label.USEFUL), (0, 80, Label.NOT_USEFUL)])
def test_label_rule(h, t, expected):
    assert derive_label(_review(h, t), PipelineConfig()).label is expected


def test_below_min_votes_is_absent():
    assert derive_label(_review(50, 74), PipelineConfig()) is None


@given(st.integers(0, 10_000), st.integers(1, 10_000))
def test_label_matches_integer_rule(h, t):
    h = min(h, t)
    ex = derive_label(_review(h, t), PipelineConfig(min_votes=1))
    assert (ex.label is Label.USEFUL) == (h * 10 >= 7 * t)
    assert ex.usefulness_ratio == h / t


@given(st.integers(1, 500), st.integers(1, 500), st.sampled_from([0.6, 0.7, 0.75, 0.33]))
def test_threshold_comparison_is_exact(h, t, thr):
    h = min(h, t)
    ex = derive_label(_review(h, t), PipelineConfig(min_votes=1, usefulness_threshold=thr))
    assert (ex.label is Label.USEFUL) == (Fraction(h, t) >= Fraction(str(thr)))


def _examples(n):
    return [LabeledExample(_review(80, 100, f"id{i:03d}"), 0.8, Label.USEFUL) for i in range(n)]


def test_split_sizes_and_disjoint():
    train, test = sample_and_split(_examples(10), PipelineConfig(sample_size=10, seed=42))
    assert len(train) == len(test) == 5
    assert not {e.id for e in train} & {e.id for e in test}


def test_split_independent_of_input_order():
    exs = _examples(30)
    cfg = PipelineConfig(sample_size=20, seed=3)
    a = sample_and_split(exs, cfg)
    b = sample_and_split(list(reversed(exs)), cfg)
    assert [[e.id for e in part] for part in a] == [[e.id for e in part] for part in b]


def test_split_sizes_at_full_scale():
    train, test = sample_and_split(_examples(39_000), PipelineConfig())
    assert (len(train), len(test)) == (19_500, 19_500)


def test_split_too_small_raises():
    with pytest.raises(SizingError):
        sample_and_split(_examples(5), PipelineConfig(sample_size=6))


def test_class_balance():
    assert class_balance([]) == (0, 0)
    exs = [LabeledExample(_review(1, 1), 1.0, lab) for lab in (Label.USEFUL, Label.USEFUL, Label.NOT_USEFUL)]
    assert class_balance(exs) == (2, 1)


def test_review_round_trip():
    r = Review("a_b", "Music", "Text é", 3, 9, "sum", 4.0)
    assert parse_review_line(review_to_json(r), category="Music") == r


@given(st.text(min_size=1).filter(str.strip), st.integers(0, 1000), st.integers(0, 1000))
def test_example_json_round_trip(text, h, extra):
    ex = LabeledExample(Review("x", "C", text, h, h + extra), 0.5, Label.NOT_USEFUL)
    assert example_from_json(example_to_json(ex)) == ex


def test_ingest_summary_counts(write_jsonl, tmp_path):
    path = write_jsonl([
        {"reviewText": "fine", "helpful": [80, 100]},
        {"reviewText": "meh", "helpful": [10, 100]},
        {"reviewText": "few", "helpful": [1, 2]},
        {"reviewText": "  ", "helpful": [90, 100]},
        {"reviewText": "bad", "helpful": [9, 3]},
        "garbage",
    ])
    examples, s = ingest(path, PipelineConfig())
    assert len(examples) == 2
    assert (s.lines, s.useful, s.not_useful) == (6, 1, 1)
    assert s.dropped_below_min_votes == 1
    assert s.dropped_empty_text == 1
    assert s.dropped_integrity_error == 1
    assert s.dropped_parse_error == 1
    assert examples[0].review.category == "reviews"


def test_ingest_strict_raises(write_jsonl):
    path = write_jsonl([{"reviewText": "ok", "helpful": [80, 100]}, "garbage"])
    with pytest.raises(ReviewParseError) as err:
        ingest(path, PipelineConfig(), strict=True)
    assert err.value.line_no == 2


def test_ingest_reads_gzip(tmp_path):
    path = tmp_path / "Music.json.gz"
    with gzip.open(path, "wt", encoding="utf-8") as fh:
        fh.write(json.dumps({"reviewText": "ok", "helpful": [80, 100]}) + "\n")
    examples, _ = ingest(path, PipelineConfig())
    assert len(examples) == 1


def test_sample_summary_matches_independent_scan(sample_file, sample_examples):
    useful = not_useful = 0
    for line in sample_file.read_text(encoding="utf-8").splitlines():
        h, t = json.loads(line)["helpful"]
        if t >= 75:
            if 10 * h >= 7 * t:
                useful += 1
            else:
                not_useful += 1
    assert class_balance(sample_examples) == (useful, not_useful)
    assert useful + not_useful == 200


def test_labeled_file_round_trip(tmp_path, sample_examples):
    path = tmp_path / "c.jsonl"
    write_labeled(path, sample_examples)
    assert read_labeled(path) == sample_examples
