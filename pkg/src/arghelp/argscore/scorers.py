"""Sentence scorers producing claim / evidence margins.

Three implementations share one interface: ``FixedScorer`` (constant stub),
``LexiconScorer`` (offline cue-phrase lexicon) and ``RemoteScorer`` (HTTP
client for an argumentation-mining service).
"""

from __future__ import annotations

import hashlib
import json
import logging
import re
import threading
import time
import urllib.error
import urllib.request
from abc import ABC, abstractmethod
from dataclasses import dataclass

from arghelp._resources import data_lines
from arghelp.argscore.segment import segment_sentences
from arghelp.argscore.stats import SentenceScores

log = logging.getLogger(__name__)


class ScoringError(RuntimeError):
    def __init__(self, message: str, review_id: str | None = None):
        self.review_id = review_id
        prefix = f"review {review_id}: " if review_id else ""
        super().__init__(prefix + message)


class ArgScorer(ABC):
    scorer_id: str

    @abstractmethod
    def score_sentences(self, sentences: list[str]) -> list[SentenceScores]:
        """One ``SentenceScores`` per input sentence, in order."""

    def score_text(self, text: str) -> list[SentenceScores]:
        return self.score_sentences(segment_sentences(text))


def score_sentences(scorer: ArgScorer, sentences: list[str]) -> list[SentenceScores]:
    out = scorer.score_sentences(sentences)
    if len(out) != len(sentences):
        raise ScoringError(f"scorer returned {len(out)} scores for {len(sentences)} sentences")
    return out


class FixedScorer(ArgScorer):
    def __init__(self, claim: float = -1.0, evidence: float = -1.0):
        self.claim = float(claim)
        self.evidence = float(evidence)
        self.scorer_id = f"fixed:{self.claim!r},{self.evidence!r}"

    def score_sentences(self, sentences):
        return [SentenceScores(s, self.claim, self.evidence) for s in sentences]


def load_lexicon(name_or_lines) -> dict[str, float]:
    lines = data_lines(name_or_lines) if isinstance(name_or_lines, str) else name_or_lines
    lex = {}
    for line in lines:
        phrase, weight = line.rsplit("\t", 1)
        lex[phrase.strip().lower()] = float(weight)
    return lex


def _compile(lexicon: dict[str, float]) -> list[tuple[re.Pattern, float]]:
    return [
        (re.compile(r"(?<!\w)" + r"\s+".join(map(re.escape, p.split())) + r"(?!\w)"), w)
        for p, w in sorted(lexicon.items())
    ]


class LexiconScorer(ArgScorer):
    """Score = sum of weights of the distinct cues present, minus a bias of 1.

    Matching is case-insensitive on whole words. A cue-free sentence scores
    ``-bias`` on both channels.
    """

    def __init__(
        self,
        claim_cues: dict[str, float] | None = None,
        evidence_cues: dict[str, float] | None = None,
        bias: float = 1.0,
    ):
        self.claim_cues = claim_cues if claim_cues is not None else load_lexicon("claim_cues.tsv")
        self.evidence_cues = (
            evidence_cues if evidence_cues is not None else load_lexicon("evidence_cues.tsv")
        )
        self.bias = bias
        self._claim = _compile(self.claim_cues)
        self._evidence = _compile(self.evidence_cues)
        digest = hashlib.sha256(
            json.dumps([sorted(self.claim_cues.items()), sorted(self.evidence_cues.items()), bias])
            .encode()
        ).hexdigest()[:12]
        self.scorer_id = f"lexicon:{digest}"

    @staticmethod
    def _score(sentence: str, patterns, bias: float) -> float:
        return sum(w for pat, w in patterns if pat.search(sentence)) - bias

    def score_sentences(self, sentences):
        out = []
        for s in sentences:
            low = s.lower()
            out.append(
                SentenceScores(
                    s, self._score(low, self._claim, self.bias), self._score(low, self._evidence, self.bias)
                )
            )
        return out


@dataclass
class RemoteConfig:
    endpoint: str = "http://localhost:8080"
    timeout: float = 30.0
    retries: int = 3
    backoff: float = 0.5
    max_in_flight: int = 4


class RemoteScorer(ArgScorer):
    """Client for ``POST {endpoint}/score``.

    Request body ``{"text": ...}``; the response must be
    ``{"sentences": [{"text", "claim_score", "evidence_score"}, ...]}``.
    Transport errors and 5xx responses are retried with exponential backoff.
    """

    def __init__(self, config: RemoteConfig | None = None, scorer_id: str | None = None):
        self.config = config or RemoteConfig()
        self.scorer_id = scorer_id or f"remote:{self.config.endpoint.rstrip('/')}"
        self._slots = threading.BoundedSemaphore(max(1, self.config.max_in_flight))
        self.calls = 0
        self._lock = threading.Lock()

    def _post(self, text: str) -> dict:
        url = self.config.endpoint.rstrip("/") + "/score"
        body = json.dumps({"text": text}).encode("utf-8")
        last: Exception | None = None
        for attempt in range(self.config.retries + 1):
            if attempt:
                time.sleep(self.config.backoff * 2 ** (attempt - 1))
            req = urllib.request.Request(
                url, data=body, headers={"Content-Type": "application/json"}, method="POST"
            )
            try:
                with self._slots:
                    with self._lock:
                        self.calls += 1
                    with urllib.request.urlopen(req, timeout=self.config.timeout) as resp:
                        return json.loads(resp.read().decode("utf-8"))
            except urllib.error.HTTPError as exc:
                last = exc
                if exc.code < 500:
                    break
            except (urllib.error.URLError, TimeoutError, ConnectionError, OSError) as exc:
                last = exc
            except json.JSONDecodeError as exc:
                raise ScoringError(f"response is not JSON: {exc}") from None
            log.debug("scorer request failed (attempt %d): %s", attempt + 1, last)
        raise ScoringError(f"request to {url} failed: {last}")

    @staticmethod
    def _parse(payload) -> list[SentenceScores]:
        try:
            return [
                SentenceScores(
                    str(s.get("text", "")), float(s["claim_score"]), float(s["evidence_score"])
                )
                for s in payload["sentences"]
            ]
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ScoringError(f"non-conforming payload: {exc!r}") from None

    def score_text(self, text: str) -> list[SentenceScores]:
        return self._parse(self._post(text))

    def score_sentences(self, sentences):
        out = self._parse(self._post(" ".join(sentences)))
        if len(out) != len(sentences):
            raise ScoringError(f"endpoint returned {len(out)} scores for {len(sentences)} sentences")
        return out


def make_scorer(kind: str, remote: RemoteConfig | None = None) -> ArgScorer:
    if kind == "lexicon":
        return LexiconScorer()
    if kind == "fixed":
        return FixedScorer()
    if kind == "remote":
        return RemoteScorer(remote)
    raise ValueError(f"unknown scorer {kind!r}")
