"""Command line entry point.

Subcommands::

    arghelp ingest reviews.json.gz --out corpus.jsonl
    arghelp score corpus.jsonl --cache scores.jsonl --scorer lexicon
    arghelp experiment corpus.jsonl --cache scores.jsonl --out results/
    arghelp figure corpus.jsonl --cache scores.jsonl --out figure1.csv

Every command accepts ``--config run.toml``; flags override the file, and
every run writes a JSON manifest next to its outputs. ``@sample`` names the
bundled 200-review synthetic file.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path

from arghelp import __version__
from arghelp._resources import SAMPLE_ALIAS, resolve_input
from arghelp.argscore import ScoreCache, ScoringError, make_scorer, score_reviews
from arghelp.config import RunConfig, load_config
from arghelp.corpus import (
    CorpusError,
    LabeledExample,
    ReviewParseError,
    ingest,
    read_labeled,
    sample_and_split,
    write_labeled,
)
from arghelp.evaluation import figure1_csv, figure1_data
from arghelp.experiment import run_table, table_csv, table_json
from arghelp.features import ALL_FEATURE_SETS, FeatureSet
from arghelp.model import save_model
from arghelp.textproc import VocabularyError

log = logging.getLogger("arghelp")


def sha256_file(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _write(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")
    return path


def _config(args) -> RunConfig:
    cfg = load_config(args.config)
    return cfg.with_overrides(
        pipeline__seed=getattr(args, "seed", None),
        pipeline__sample_size=getattr(args, "sample_size", None),
        pipeline__min_votes=getattr(args, "min_votes", None),
        pipeline__usefulness_threshold=getattr(args, "threshold", None),
        scorer__kind=getattr(args, "scorer", None),
        scorer__endpoint=getattr(args, "endpoint", None),
        scorer__timeout=getattr(args, "timeout", None),
        scorer__retries=getattr(args, "retries", None),
        scorer__max_in_flight=getattr(args, "max_in_flight", None),
    )


def _scorer(cfg: RunConfig):
    return make_scorer(cfg.scorer.kind, cfg.scorer.remote())


def _parse_sets(text: str | None) -> list[FeatureSet]:
    if not text:
        return list(ALL_FEATURE_SETS)
    return [FeatureSet.parse(s) for s in text.split(",") if s.strip()]


def _manifest(command, cfg, inputs, artifacts, extra, started) -> dict:
    def ref(p):
        return {"path": str(Path(p).resolve()), "sha256": sha256_file(p)}

    return {
        "arghelp_version": __version__,
        "command": command,
        "config": cfg.to_dict(),
        "seed": cfg.pipeline.seed,
        "inputs": {k: ref(p) for k, p in inputs.items() if p},
        "artifacts": {k: ref(p) for k, p in artifacts.items()},
        "timings": {"started": started, "seconds": round(time.time() - started, 3)},
        **extra,
    }


def _write_manifest(path: Path, manifest: dict) -> dict:
    _write(path, json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest


def cmd_ingest(args) -> int:
    started = time.time()
    cfg = _config(args)
    source = resolve_input(args.input)
    category = args.category
    if category is None and str(args.input) == SAMPLE_ALIAS:
        category = "Sample"
    examples, summary = ingest(source, cfg.pipeline, category, strict=args.strict)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_labeled(out, examples)
    summary_path = Path(args.summary) if args.summary else out.with_suffix(".summary.json")
    _write(summary_path, json.dumps(summary.to_dict(), indent=2, sort_keys=True) + "\n")
    _write_manifest(
        out.with_suffix(".manifest.json"),
        _manifest("ingest", cfg, {"reviews": source},
                  {"corpus": out, "summary": summary_path}, {"strict": args.strict}, started),
    )
    print(json.dumps(summary.to_dict(), sort_keys=True))
    return 0


def cmd_score(args) -> int:
    started = time.time()
    cfg = _config(args)
    if args.cache is None:
        log.error("score needs --cache")
        return 2
    examples = read_labeled(args.corpus)
    cache = ScoreCache(args.cache)
    scorer = _scorer(cfg)
    before = len(cache)
    scored = score_reviews(
        ((ex.id, ex.review.text) for ex in examples),
        scorer,
        cache,
        jobs=args.jobs,
        skip_errors=args.skip_errors,
    )
    stats = {"reviews": len(examples), "scored": len(scored), "new": len(cache) - before,
             "scorer_id": scorer.scorer_id}
    artifacts = {"cache": args.cache} if Path(args.cache).exists() else {}
    _write_manifest(
        Path(args.cache).with_suffix(".manifest.json"),
        _manifest("score", cfg, {"corpus": args.corpus}, artifacts, stats, started),
    )
    print(json.dumps(stats, sort_keys=True))
    return 0


def _by_category(examples: list[LabeledExample]) -> dict[str, list[LabeledExample]]:
    groups: dict[str, list[LabeledExample]] = {}
    for ex in examples:
        groups.setdefault(ex.review.category, []).append(ex)
    return dict(sorted(groups.items()))


def run_experiment(corpus, cache_path, sets, cfg: RunConfig, out_dir, jobs: int = 1) -> dict:
    started = time.time()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    examples = read_labeled(corpus)
    needs_args = any(fs.uses_args for fs in sets)
    scorer = _scorer(cfg) if needs_args else None
    cache = ScoreCache(cache_path) if (cache_path and needs_args) else None

    reports, significance, vocab_sums = [], {}, {}
    artifacts: dict[str, Path] = {}
    for category, group in _by_category(examples).items():
        train, test = sample_and_split(group, cfg.pipeline)
        result = run_table(
            train, test, scorer, cfg.grid(), cfg.pipeline, sets, cache,
            threshold=cfg.scorer.threshold, jobs=jobs, category=category,
        )
        reports.extend(result.reports)
        for pair, res in result.significance.items():
            significance[f"{category}: {pair}"] = res.to_dict()
        slug = "".join(c if c.isalnum() else "_" for c in category) or "all"
        checksum = None
        if result.vectorizer is not None:
            checksum = result.vectorizer.vocab.checksum()
            vocab_sums[category] = checksum
            artifacts[f"vocab/{slug}"] = _write(out_dir / f"vocab_{slug}.json", result.vectorizer.vocab.to_json() + "\n")
        for fs, cv in result.cv.items():
            path = out_dir / "models" / f"{slug}_{fs.name.lower()}.json"
            path.parent.mkdir(parents=True, exist_ok=True)
            save_model(path, cv.model, checksum if fs.text_kind else None)
            artifacts[f"model/{slug}/{fs.value}"] = path

    artifacts["table_csv"] = _write(out_dir / "table.csv", table_csv(reports))
    artifacts["report_json"] = _write(out_dir / "report.json", table_json(reports, significance))
    artifacts["config"] = _write(out_dir / "config.toml", cfg.to_toml())
    manifest = _manifest(
        "experiment",
        cfg,
        {"corpus": corpus, "cache": cache_path if cache_path and Path(cache_path).exists() else None},
        artifacts,
        {
            "feature_sets": [fs.value for fs in sets],
            "scorer_id": scorer.scorer_id if scorer else None,
            "vocab_checksums": vocab_sums,
            "jobs": jobs,
        },
        started,
    )
    return _write_manifest(out_dir / "manifest.json", manifest)


def cmd_experiment(args) -> int:
    if args.from_manifest:
        m = json.loads(Path(args.from_manifest).read_text(encoding="utf-8"))
        cfg = RunConfig.from_dict(m["config"])
        corpus = m["inputs"]["corpus"]["path"]
        cache = m["inputs"].get("cache", {}).get("path")
        for key, rec in m["inputs"].items():
            if sha256_file(rec["path"]) != rec["sha256"]:
                log.error("input %s changed since the manifest was written: %s", key, rec["path"])
                return 1
        sets = [FeatureSet(s) for s in m["feature_sets"]]
        jobs = m.get("jobs", 1)
    else:
        if not args.corpus:
            log.error("a corpus path or --from-manifest is required")
            return 2
        cfg = _config(args)
        corpus, cache, sets, jobs = args.corpus, args.cache, _parse_sets(args.sets), args.jobs
    manifest = run_experiment(corpus, cache, sets, cfg, args.out, jobs)
    sys.stdout.write(Path(manifest["artifacts"]["table_csv"]["path"]).read_text(encoding="utf-8"))
    return 0


def cmd_figure(args) -> int:
    started = time.time()
    cfg = _config(args)
    examples = read_labeled(args.corpus)
    if args.limit is not None:
        examples = examples[: args.limit]
    cache = ScoreCache(args.cache) if args.cache else None
    points, r = figure1_data(examples, _scorer(cfg), cache, cfg.scorer.threshold, jobs=args.jobs)
    out = Path(args.out)
    _write(out, figure1_csv(points))
    summary = {"n": len(points)}
    if r is not None:
        summary["pearson_r"] = r
    summary_path = _write(out.with_suffix(".json"), json.dumps(summary, indent=2, sort_keys=True) + "\n")
    scorer_id = cfg.scorer.kind if not points else _scorer(cfg).scorer_id
    _write_manifest(
        out.with_suffix(".manifest.json"),
        _manifest("figure", cfg, {"corpus": args.corpus}, {"csv": out, "summary": summary_path},
                  {"scorer_id": scorer_id, "limit": args.limit}, started),
    )
    print(json.dumps(summary, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arghelp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"arghelp {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="TOML run configuration")
    common.add_argument("--seed", type=int)
    common.add_argument("--jobs", type=int, default=1, help="worker threads (default 1)")

    scoring = argparse.ArgumentParser(add_help=False)
    scoring.add_argument("--scorer", choices=("remote", "lexicon", "fixed"))
    scoring.add_argument("--endpoint", help="base URL of the remote scorer")
    scoring.add_argument("--timeout", type=float)
    scoring.add_argument("--retries", type=int)
    scoring.add_argument("--max-in-flight", type=int, dest="max_in_flight")
    scoring.add_argument("--cache", type=Path, help="JSON-lines score cache")

    p = sub.add_parser("ingest", parents=[common], help="parse and label a review dump")
    p.add_argument("input", type=Path)
    p.add_argument("--out", type=Path, required=True, help="labeled corpus (JSON lines)")
    p.add_argument("--summary", type=Path, help="summary JSON (default: next to --out)")
    p.add_argument("--category", help="category name (default: input file stem)")
    p.add_argument("--min-votes", type=int, dest="min_votes")
    p.add_argument("--threshold", type=float, help="usefulness threshold")
    p.add_argument("--strict", action="store_true", help="fail on the first bad line")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("score", parents=[common, scoring], help="fill the score cache")
    p.add_argument("corpus", type=Path)
    p.add_argument("--skip-errors", action="store_true")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("experiment", parents=[common, scoring], help="run the ablation table")
    p.add_argument("corpus", type=Path, nargs="?")
    p.add_argument("--sets", help="comma-separated feature sets (default: all five)")
    p.add_argument("--sample-size", type=int, dest="sample_size")
    p.add_argument("--out", type=Path, default=Path("results"))
    p.add_argument("--from-manifest", type=Path, help="re-run a previous experiment")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("figure", parents=[common, scoring], help="argument count vs usefulness data")
    p.add_argument("corpus", type=Path)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--limit", type=int, help="use only the first N reviews")
    p.set_defaults(func=cmd_figure)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except ReviewParseError as exc:
        log.error("%s: %s", getattr(args, "input", ""), exc)
    except (CorpusError, ScoringError, VocabularyError, ValueError, FileNotFoundError) as exc:
        log.error("%s", exc)
    return 1


if __name__ == "__main__":
    sys.exit(main())
