"""From review text to sparse BoW and TF-IDF vectors.

Run: python demos/02_text_features.py
"""

from arghelp.textproc import TextVectorizer, preprocess, stem, tokenize

text = "The geniuses' improvisation on this album is stunning; improvising live is harder."
print("tokens:   ", tokenize(text))
print("processed:", preprocess(text))
print("stem('generously') =", stem("generously"))

train = [
    "Great guitar tone and a tight rhythm section.",
    "The guitar solos drag on, the rhythm is loose.",
    "Rhythm and tone both improve on the second disc.",
    "Loose mix, muddy tone, skip it.",
]
# min_count=2 keeps stems seen at least twice across the training texts.
vec = TextVectorizer.fit(train, min_count=2)
print("\nvocabulary:", vec.vocab.tokens())

doc = "Tone, tone and more guitar tone."
bow, tfidf = vec.bow(doc), vec.tfidf(doc)
for (i, count), (_, weight) in zip(bow.entries, tfidf.entries):
    print(f"  {vec.vocab.tokens()[i]:<8} count={count:.0f}  tfidf={weight:.4f}")
