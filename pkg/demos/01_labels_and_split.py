"""Turn raw review votes into Useful/NotUseful labels, then draw the seeded split.

Run: python demos/01_labels_and_split.py
"""

from arghelp._resources import data_path
from arghelp.corpus import PipelineConfig, class_balance, derive_label, ingest, parse_review_line, sample_and_split

# A review is labeled only once it has enough votes; 70 of 100 sits exactly on the threshold.
cfg = PipelineConfig()
for votes in ([70, 100], [69, 100], [50, 74]):
    review = parse_review_line(f'{{"reviewText": "Solid.", "helpful": {votes}}}')
    ex = derive_label(review, cfg)
    print(f"helpful {votes[0]:>3}/{votes[1]:<3} ->", ex.label.value if ex else "skipped (too few votes)")

# The bundled file holds 200 synthetic reviews, each with at least 75 votes.
examples, summary = ingest(data_path("sample_reviews.jsonl"), cfg, "Sample")
useful, not_useful = class_balance(examples)
print(f"\ningested {summary.labeled} reviews: {useful} Useful, {not_useful} NotUseful")

# Sorting by id before the seeded shuffle means file order never changes the split.
train, test = sample_and_split(examples, PipelineConfig(sample_size=200, seed=0))
print(f"train {len(train)} / test {len(test)}; first test ids: {[e.id for e in test[:3]]}")
