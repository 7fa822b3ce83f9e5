"""How the number of argumentative sentences tracks the usefulness ratio.

Writes figure1.csv (one row per review) to the current directory; plot it with
any tool you like.

Run: python demos/06_figure_data.py
"""

from collections import defaultdict
from pathlib import Path

from arghelp.argscore import LexiconScorer
from arghelp.evaluation import figure1_csv, figure1_data
from arghelp.synthetic import SyntheticSpec, generate_examples

examples = generate_examples(SyntheticSpec(n_reviews=1000))
points, r = figure1_data(examples, LexiconScorer())
Path("figure1.csv").write_text(figure1_csv(points), encoding="utf-8")
print(f"wrote figure1.csv with {len(points)} rows, Pearson r = {r:.3f}")

by_count = defaultdict(list)
for count, ratio in points:
    by_count[min(count, 6)].append(ratio)
for count in sorted(by_count):
    ratios = by_count[count]
    label = f"{count}+" if count == 6 else str(count)
    print(f"  {label:>2} argumentative sentences: mean ratio {sum(ratios) / len(ratios):.3f}  (n={len(ratios)})")
