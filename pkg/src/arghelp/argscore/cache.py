"""Append-only JSON-lines cache of sentence scores keyed by (review_id, scorer_id)."""

from __future__ import annotations

import json
import logging
import math
import threading
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from arghelp.argscore.scorers import ArgScorer, ScoringError
from arghelp.argscore.stats import SentenceScores

log = logging.getLogger(__name__)


class ScoreCache:
    """In-memory index over an optional backing file.

    Records are ``{"review_id", "scorer_id", "scores": [[claim, evidence], ...]}``;
    the last record for a key wins. Unreadable records are skipped with a warning.
    """

    def __init__(self, path: str | Path | None = None):
        self.path = Path(path) if path is not None else None
        self._store: dict[tuple[str, str], list[tuple[float, float]]] = {}
        self._lock = threading.Lock()
        self.invalid_records = 0
        if self.path is not None and self.path.exists():
            self._load()

    def _load(self):
        with open(self.path, encoding="utf-8") as fh:
            for n, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                    key = (str(rec["review_id"]), str(rec["scorer_id"]))
                    pairs = [(float(c), float(e)) for c, e in rec["scores"]]
                    if not all(math.isfinite(c) and math.isfinite(e) for c, e in pairs):
                        raise ValueError("non-finite score")
                except (ValueError, KeyError, TypeError) as exc:
                    self.invalid_records += 1
                    log.warning("ignoring corrupt cache record at %s:%d (%s)", self.path, n, exc)
                    continue
                self._store[key] = pairs

    def __len__(self) -> int:
        return len(self._store)

    def __contains__(self, key: tuple[str, str]) -> bool:
        return key in self._store

    def lookup(self, review_id: str, scorer_id: str) -> list[SentenceScores] | None:
        pairs = self._store.get((review_id, scorer_id))
        if pairs is None:
            return None
        return [SentenceScores("", c, e) for c, e in pairs]

    def put(self, review_id: str, scorer_id: str, scores: list[SentenceScores]) -> None:
        pairs = [(s.claim_score, s.evidence_score) for s in scores]
        rec = json.dumps(
            {"review_id": review_id, "scorer_id": scorer_id, "scores": [list(p) for p in pairs]}
        )
        with self._lock:
            self._store[(review_id, scorer_id)] = pairs
            if self.path is not None:
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(rec + "\n")


def cache_scores(store: ScoreCache, review_id: str, scorer_id: str, scores: list[SentenceScores]):
    store.put(review_id, scorer_id, scores)


def lookup_scores(store: ScoreCache, review_id: str, scorer_id: str):
    return store.lookup(review_id, scorer_id)


def score_reviews(
    items: Iterable[tuple[str, str]],
    scorer: ArgScorer | None,
    cache: ScoreCache | None = None,
    jobs: int = 1,
    skip_errors: bool = False,
) -> dict[str, list[SentenceScores]]:
    """Scores for ``(review_id, text)`` pairs, served from ``cache`` when present.

    Fresh results are written back to the cache. With ``skip_errors`` a failing
    review is logged and left out of the result instead of aborting the run.
    """
    items = list(items)
    out: dict[str, list[SentenceScores]] = {}
    todo = []
    for rid, text in items:
        hit = cache.lookup(rid, scorer.scorer_id) if cache is not None and scorer is not None else None
        if hit is not None:
            out[rid] = hit
        else:
            todo.append((rid, text))
    if todo and scorer is None:
        raise ScoringError(f"{len(todo)} reviews missing from cache and no scorer given", todo[0][0])

    def work(item):
        rid, text = item
        try:
            return rid, scorer.score_text(text), None
        except ScoringError as exc:
            return rid, None, ScoringError(str(exc), rid)

    if jobs > 1 and len(todo) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(work, todo))
    else:
        results = [work(it) for it in todo]

    for rid, scores, err in results:
        if err is not None:
            if skip_errors:
                log.warning("skipping %s", err)
                continue
            raise err
        if cache is not None:
            cache.put(rid, scorer.scorer_id, scores)
        out[rid] = scores
    return {rid: out[rid] for rid, _ in items if rid in out}
