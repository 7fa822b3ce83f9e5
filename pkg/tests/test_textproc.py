import math
import re

import numpy as np
import pytest
import snowballstemmer
from hypothesis import given, settings
from hypothesis import strategies as st

from arghelp.textproc import (
    SparseVector,
    TextVectorizer,
    Vocabulary,
    VocabularyError,
    build_vocabulary,
    concat,
    default_stopwords,
    document_frequencies,
    idf,
    l2_normalize,
    load_stopwords,
    preprocess,
    stem,
    tokenize,
    vectorize_bow,
    vectorize_tfidf,
)

from oracles import TOY_DOCS, dense_bow, dense_tfidf

REFERENCE = snowballstemmer.stemmer("english")


def test_tokenize_examples():
    assert tokenize("The music indeed seems") == ["the", "music", "indeed", "seems"]
    assert tokenize("") == []
    assert tokenize("Cream's 1968 tour!") == ["cream", "s", "tour"]


def test_tokenize_keeps_unicode_letters():
    assert tokenize("Café naïve_x3y") == ["café", "naïve", "x", "y"]


@pytest.mark.parametrize("word,expected", [
    ("geniuses", "genius"), ("improvisation", "improvis"), ("a", "a"),
    ("running", "run"), ("generously", "generous"), ("skies", "sky"), ("dying", "die"),
    ("news", "news"), ("communism", "communism"), ("arsenal", "arsenal"), ("quantization", "quantiz"),
])
def test_stem_examples(word, expected):
    assert stem(word) == expected


def test_stem_matches_reference_on_bundled_words(sample_file):
    words = set(re.findall(r"[a-z]+", sample_file.read_text(encoding="utf-8").lower()))
    words |= default_stopwords()
    words |= {"consigned", "knightly", "hopping", "feed", "agreed", "plastered", "controlling",
              "emotionally", "sensational", "ownership", "abundance", "nationalization",
              "conditional", "rational", "hopefulness", "formality", "sensitivities", "effective",
              "adoption", "gently", "ied", "cries", "succeed", "proceed", "exceed", "innings",
              "outing", "canning", "herring", "earring", "howe", "atlas", "cosmos", "bias",
              "andes", "skis", "ugly", "early", "only", "singly", "sky", "idly", "gently",
              "yelling", "boyish", "sayings", "commune", "universe", "general", "generate"}
    mismatched = {w: (stem(w), REFERENCE.stemWord(w)) for w in words if stem(w) != REFERENCE.stemWord(w)}
    assert not mismatched


@settings(max_examples=2000)
@given(st.text(alphabet="abcdeilnorstuvyz", min_size=1, max_size=14))
def test_stem_matches_reference_on_random_strings(word):
    assert stem(word) == REFERENCE.stemWord(word)


def test_preprocess_drops_stopwords_and_stems():
    assert preprocess("The geniuses were improvising") == ["genius", "improvis"]


def test_load_stopwords(tmp_path):
    p = tmp_path / "stop.txt"
    p.write_text("# comment\nfoo\n\nBar\n", encoding="utf-8")
    assert load_stopwords(p) == frozenset({"foo", "bar"})


def test_vocabulary_min_count_boundary():
    docs = [["guitar"] * 3, ["guitar"] * 3, ["bass"] * 5, ["guitar"]]
    vocab = build_vocabulary(docs, (), 6)
    assert "guitar" in vocab and "bass" not in vocab


def test_vocabulary_excludes_stopwords():
    vocab = build_vocabulary([["the"] * 1000 + ["tune"] * 6], {"the"}, 6)
    assert vocab.tokens() == ["tune"]


def test_vocabulary_lexicographic():
    docs = [["b", "a"], ["c", "a"], ["d"]]
    vocab = build_vocabulary(docs, (), 1)
    assert vocab.token_to_index == {t: i for i, t in enumerate(sorted({"a", "b", "c", "d"}))}


def test_empty_vocabulary_raises():
    with pytest.raises(VocabularyError):
        build_vocabulary([["a"]], (), 6)


def test_vocabulary_json_round_trip_and_checksum():
    vocab = build_vocabulary(TOY_DOCS, (), 1)
    again = Vocabulary.from_json(vocab.to_json())
    assert again.token_to_index == vocab.token_to_index
    assert again.checksum() == vocab.checksum()
    assert build_vocabulary(list(TOY_DOCS), (), 1).to_json() == vocab.to_json()


def test_bow_examples():
    vocab = Vocabulary({"genius": 0, "music": 1}, {"genius": 2, "music": 1})
    v = vectorize_bow(["genius", "genius"], vocab)
    assert v.entries == [(0, 2.0)]
    empty = vectorize_bow(["zzz"], vocab)
    assert empty.nnz == 0 and empty.dimension == 2


def test_idf_values():
    assert idf(4, 4) == 1.0
    vocab = Vocabulary({"x": 0}, {"x": 2})
    v = vectorize_tfidf(["x", "x"], vocab, {"x": 1}, 4)
    assert v.values[0] == pytest.approx(2 * (math.log(5 / 2) + 1), abs=1e-12)
    assert v.values[0] == pytest.approx(3.8326, abs=1e-4)


@given(st.integers(1, 1000), st.integers(0, 999), st.integers(0, 999))
def test_idf_monotone(n, a, b):
    a, b = min(a, n), min(b, n)
    if a < b:
        assert idf(a, n) > idf(b, n)


def test_toy_matrices_match_dense_oracle():
    vocab = build_vocabulary(TOY_DOCS, (), 1)
    df = document_frequencies(TOY_DOCS, vocab)
    o_vocab, o_bow = dense_bow(TOY_DOCS)
    _, o_tfidf = dense_tfidf(TOY_DOCS)
    assert vocab.tokens() == o_vocab
    bow = np.stack([vectorize_bow(d, vocab).to_dense() for d in TOY_DOCS])
    tfidf = np.stack([vectorize_tfidf(d, vocab, df, len(TOY_DOCS)).to_dense() for d in TOY_DOCS])
    assert np.max(np.abs(bow - o_bow)) <= 1e-9
    assert np.max(np.abs(tfidf - o_tfidf)) <= 1e-9


def test_vectorizer_fit_on_text():
    texts = ["Guitars and guitars", "The guitar solo", "A solo tour"]
    vec = TextVectorizer.fit(texts, min_count=2)
    assert vec.vocab.tokens() == ["guitar", "solo"]
    assert vec.bow("guitar guitar solo").entries == [(0, 2.0), (1, 1.0)]
    assert vec.idf_vector().tolist() == [math.log(4 / 3) + 1, math.log(4 / 3) + 1]


def test_l2_normalize_examples():
    v = l2_normalize(SparseVector.from_dict({0: 3.0, 1: 4.0}, 2))
    assert v.entries == [(0, 0.6), (1, 0.8)]
    z = SparseVector.zeros(5)
    assert l2_normalize(z) == z


dense_vectors = st.lists(
    st.floats(-1e6, 1e6, allow_nan=False).filter(lambda x: abs(x) > 1e-6), min_size=1, max_size=20
)


@given(dense_vectors)
def test_l2_normalize_unit_and_idempotent(xs):
    v = l2_normalize(SparseVector.from_dense(np.array(xs)))
    assert abs(v.norm() - 1.0) <= 1e-9
    assert np.allclose(l2_normalize(v).to_dense(), v.to_dense(), atol=1e-9, rtol=0)


def test_random_20_entry_vector_normalizes():
    rng = np.random.default_rng(5)
    v = SparseVector.from_dict({int(i): float(rng.normal()) for i in rng.choice(100, 20, replace=False)}, 100)
    assert abs(math.sqrt(sum(x * x for _, x in l2_normalize(v).entries)) - 1) <= 1e-9


def test_sparse_vector_validation():
    with pytest.raises(ValueError):
        SparseVector(np.array([1, 0]), np.array([1.0, 1.0]), 3)
    with pytest.raises(ValueError):
        SparseVector(np.array([3]), np.array([1.0]), 3)
    with pytest.raises(ValueError):
        SparseVector(np.array([0]), np.array([0.0]), 3)


def test_concat_offsets():
    a = SparseVector.from_dict({1: 2.0}, 3)
    b = SparseVector.from_dict({0: 5.0}, 2)
    c = concat([a, b])
    assert c.dimension == 5 and c.entries == [(1, 2.0), (3, 5.0)]
