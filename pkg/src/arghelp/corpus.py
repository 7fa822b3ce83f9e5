"""Review ingestion, usefulness labels, and deterministic train/test splits."""

from __future__ import annotations

import enum
import gzip
import json
import logging
from collections.abc import Iterable, Iterator
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

log = logging.getLogger(__name__)


class CorpusError(Exception):
    """Base class for ingestion failures."""


class ReviewParseError(CorpusError):
    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        where = f"line {line_no}: " if line_no is not None else ""
        super().__init__(where + message)


class ReviewFieldError(ReviewParseError):
    pass


class ReviewIntegrityError(ReviewParseError):
    pass


class SizingError(CorpusError):
    def __init__(self, requested: int, available: int):
        self.requested = requested
        self.available = available
        super().__init__(f"need {requested} examples, only {available} available")


class Label(str, enum.Enum):
    USEFUL = "Useful"
    NOT_USEFUL = "NotUseful"

    @property
    def sign(self) -> int:
        return 1 if self is Label.USEFUL else -1


@dataclass(frozen=True)
class Review:
    id: str
    category: str
    text: str
    helpful_votes: int
    total_votes: int
    summary: str | None = None
    rating: float | None = None

    def __post_init__(self):
        if self.helpful_votes < 0 or self.total_votes < 0:
            raise ReviewIntegrityError(f"negative vote count in review {self.id!r}")
        if self.helpful_votes > self.total_votes:
            raise ReviewIntegrityError(
                f"helpful votes {self.helpful_votes} exceed total {self.total_votes} "
                f"in review {self.id!r}"
            )


@dataclass(frozen=True)
class LabeledExample:
    review: Review
    usefulness_ratio: float
    label: Label

    @property
    def id(self) -> str:
        return self.review.id


@dataclass(frozen=True)
class PipelineConfig:
    usefulness_threshold: float = 0.7
    min_votes: int = 75
    sample_size: int = 39000
    train_fraction: float = 0.5
    seed: int = 0
    min_token_count: int = 6
    cv_folds: int = 5

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must lie in (0, 1)")
        if not 0.0 < self.usefulness_threshold <= 1.0:
            raise ValueError("usefulness_threshold must lie in (0, 1]")
        if self.sample_size <= 0 or self.min_token_count <= 0 or self.cv_folds <= 0:
            raise ValueError("sample_size, min_token_count and cv_folds must be positive")
        if self.min_votes < 0:
            raise ValueError("min_votes must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def parse_review_line(line: str, line_no: int | None = None, category: str = "") -> Review:
    """Parse one 5-core JSON review object.

    ``reviewText`` becomes ``text``, ``helpful`` is ``[helpful, total]`` and
    ``overall`` is the star rating. The id is ``reviewerID`` and ``asin``
    joined by an underscore, falling back to the line number.
    """
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ReviewParseError(f"malformed JSON ({exc.msg})", line_no) from None
    if not isinstance(obj, dict):
        raise ReviewParseError("expected a JSON object", line_no)

    helpful = obj.get("helpful")
    if not isinstance(helpful, list) or len(helpful) != 2:
        raise ReviewFieldError("'helpful' must be a list of two integers", line_no)
    try:
        h, t = (int(v) for v in helpful)
    except (TypeError, ValueError):
        raise ReviewFieldError("'helpful' must be a list of two integers", line_no) from None

    text = obj.get("reviewText", "")
    if not isinstance(text, str):
        raise ReviewFieldError("'reviewText' must be a string", line_no)

    parts = [str(obj[k]) for k in ("reviewerID", "asin") if obj.get(k) is not None]
    if "id" in obj:
        rid = str(obj["id"])
    elif parts:
        rid = "_".join(parts)
    else:
        rid = f"line{line_no if line_no is not None else 0}"
    rating = obj.get("overall")
    try:
        return Review(
            id=rid,
            category=str(obj.get("category", category)),
            text=text,
            helpful_votes=h,
            total_votes=t,
            summary=obj.get("summary"),
            rating=float(rating) if rating is not None else None,
        )
    except ReviewIntegrityError as exc:
        raise ReviewIntegrityError(str(exc), line_no) from None


def review_to_json(review: Review) -> str:
    """Serialize back into the 5-core field layout."""
    obj: dict = {
        "id": review.id,
        "category": review.category,
        "reviewText": review.text,
        "helpful": [review.helpful_votes, review.total_votes],
    }
    if review.summary is not None:
        obj["summary"] = review.summary
    if review.rating is not None:
        obj["overall"] = review.rating
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _open_text(path: Path):
    path = Path(path)
    if path.suffix == ".gz":
        return gzip.open(path, "rt", encoding="utf-8")
    return open(path, encoding="utf-8")


def iter_review_lines(path: str | Path) -> Iterator[tuple[int, str]]:
    """Yield ``(line_no, line)`` for non-blank lines, 1-based."""
    with _open_text(Path(path)) as fh:
        for n, line in enumerate(fh, start=1):
            if line.strip():
                yield n, line


def _is_useful(review: Review, threshold: float) -> bool:
    # helpful/total >= threshold, compared as exact rationals
    frac = Fraction(str(threshold))
    return review.helpful_votes * frac.denominator >= frac.numerator * review.total_votes


def derive_label(review: Review, cfg: PipelineConfig) -> LabeledExample | None:
    """Label a review, or return None when it has too few votes."""
    if review.total_votes < cfg.min_votes or review.total_votes == 0:
        return None
    label = Label.USEFUL if _is_useful(review, cfg.usefulness_threshold) else Label.NOT_USEFUL
    return LabeledExample(review, review.helpful_votes / review.total_votes, label)


@dataclass
class IngestSummary:
    lines: int = 0
    parsed: int = 0
    labeled: int = 0
    useful: int = 0
    not_useful: int = 0
    dropped_parse_error: int = 0
    dropped_field_error: int = 0
    dropped_integrity_error: int = 0
    dropped_below_min_votes: int = 0
    dropped_empty_text: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def label_reviews(
    reviews: Iterable[Review], cfg: PipelineConfig, summary: IngestSummary | None = None
) -> list[LabeledExample]:
    summary = summary if summary is not None else IngestSummary()
    out = []
    for review in reviews:
        if not review.text.strip():
            summary.dropped_empty_text += 1
            continue
        ex = derive_label(review, cfg)
        if ex is None:
            summary.dropped_below_min_votes += 1
            continue
        out.append(ex)
    if summary.dropped_empty_text:
        log.info("dropped %d reviews with empty text", summary.dropped_empty_text)
    summary.labeled = len(out)
    summary.useful, summary.not_useful = class_balance(out)
    return out


def ingest(
    path: str | Path, cfg: PipelineConfig, category: str | None = None, strict: bool = False
) -> tuple[list[LabeledExample], IngestSummary]:
    """Read, parse and label a JSON-lines review file.

    With ``strict`` the first bad line raises; otherwise bad lines are
    counted in the summary and skipped.
    """
    path = Path(path)
    if category is None:
        category = path.name.split(".")[0]
    summary = IngestSummary()
    reviews = []
    for line_no, line in iter_review_lines(path):
        summary.lines += 1
        try:
            reviews.append(parse_review_line(line, line_no, category))
        except ReviewParseError as exc:
            if strict:
                raise
            if isinstance(exc, ReviewIntegrityError):
                summary.dropped_integrity_error += 1
            elif isinstance(exc, ReviewFieldError):
                summary.dropped_field_error += 1
            else:
                summary.dropped_parse_error += 1
            log.warning("skipping %s", exc)
    summary.parsed = len(reviews)
    return label_reviews(reviews, cfg, summary), summary


def class_balance(examples: Iterable[LabeledExample]) -> tuple[int, int]:
    n_useful = n_not = 0
    for ex in examples:
        if ex.label is Label.USEFUL:
            n_useful += 1
        else:
            n_not += 1
    return n_useful, n_not


def sample_and_split(
    examples: list[LabeledExample], cfg: PipelineConfig
) -> tuple[list[LabeledExample], list[LabeledExample]]:
    """Seeded sample of ``cfg.sample_size`` examples, split into train and test.

    Examples are sorted by id first so the input order does not matter.
    """
    if len(examples) < cfg.sample_size:
        raise SizingError(cfg.sample_size, len(examples))
    ordered = sorted(examples, key=lambda ex: ex.id)
    rng = np.random.default_rng(cfg.seed)
    picked = rng.permutation(len(ordered))[: cfg.sample_size]
    sample = [ordered[i] for i in picked]
    n_train = int(cfg.sample_size * cfg.train_fraction)
    return sample[:n_train], sample[n_train:]


def example_to_json(ex: LabeledExample) -> str:
    r = ex.review
    obj = {
        "id": r.id,
        "category": r.category,
        "text": r.text,
        "helpful_votes": r.helpful_votes,
        "total_votes": r.total_votes,
        "summary": r.summary,
        "rating": r.rating,
        "usefulness_ratio": ex.usefulness_ratio,
        "label": ex.label.value,
    }
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def example_from_json(line: str) -> LabeledExample:
    obj = json.loads(line)
    review = Review(
        id=obj["id"],
        category=obj.get("category", ""),
        text=obj["text"],
        helpful_votes=int(obj["helpful_votes"]),
        total_votes=int(obj["total_votes"]),
        summary=obj.get("summary"),
        rating=obj.get("rating"),
    )
    return LabeledExample(review, float(obj["usefulness_ratio"]), Label(obj["label"]))


def write_labeled(path: str | Path, examples: Iterable[LabeledExample]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for ex in examples:
            fh.write(example_to_json(ex) + "\n")


def read_labeled(path: str | Path) -> list[LabeledExample]:
    with _open_text(Path(path)) as fh:
        return [example_from_json(line) for line in fh if line.strip()]
