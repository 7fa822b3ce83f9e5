"""Text preprocessing: tokenization, stemming, vocabulary, sparse vectors."""

from arghelp.textproc.sparse import SparseVector, concat, l2_normalize
from arghelp.textproc.stemmer import stem
from arghelp.textproc.tokens import default_stopwords, load_stopwords, preprocess, tokenize
from arghelp.textproc.vocab import (
    TextVectorizer,
    Vocabulary,
    VocabularyError,
    build_vocabulary,
    document_frequencies,
    idf,
    vectorize_bow,
    vectorize_tfidf,
)

__all__ = [
    "SparseVector",
    "TextVectorizer",
    "Vocabulary",
    "VocabularyError",
    "build_vocabulary",
    "concat",
    "default_stopwords",
    "document_frequencies",
    "idf",
    "l2_normalize",
    "load_stopwords",
    "preprocess",
    "stem",
    "tokenize",
    "vectorize_bow",
    "vectorize_tfidf",
]
