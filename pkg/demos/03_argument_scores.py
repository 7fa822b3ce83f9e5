"""Sentence-level claim/evidence scores and the twelve review statistics built from them.

The offline lexicon scorer stands in for an argument-mining service. A real
service can be plugged in with RemoteScorer, which POSTs {"text": ...} to
<endpoint>/score.

Run: python demos/03_argument_scores.py
"""

from arghelp.argscore import FEATURE_NAMES, LexiconScorer, compute_arg_features, segment_sentences

review = (
    "I bought this for my daughter. It should last years because the case is steel. "
    "For example, it survived two drops on tile. Dr. Lee at the shop agreed. Cute colors."
)
sentences = segment_sentences(review)
scores = LexiconScorer().score_sentences(sentences)
for s in scores:
    print(f"claim {s.claim_score:+.1f}  evidence {s.evidence_score:+.1f}  | {s.sentence_text}")

feats = compute_arg_features(scores)
print()
for name, value in zip(FEATURE_NAMES, feats.to_array()):
    print(f"  {name:<16} {value:.3f}")
