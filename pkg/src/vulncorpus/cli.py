"""Command-line pipeline: normalize, curate, sample-split, stats, metrics, report.

Each subcommand reads and writes files, so every stage of a run is
auditable and re-runnable on its own. Outputs are byte-stable for
identical inputs and flags; ``--workers`` changes wall time, never
bytes. Sampling commands require an explicit ``--seed`` — there is no
hidden entropy anywhere in the pipeline.

Exit codes: 0 success, 2 IO/config problems, 3 insufficient class data,
4 validation failures.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import sys
from pathlib import Path

from . import corpus, curator, sampler
from .analytics import (
    Averaging,
    EmptyInput,
    LengthMismatch,
    LexicalCounter,
    MissingCount,
    classification_metrics,
    emit_report,
    label_distribution,
    load_external_counts,
    render_report_text,
    token_stats,
    write_json,
)
from .normalizer import normalize
from .sampler import InsufficientClass, SplitSpec, SplitSpecError

EXIT_OK = 0
EXIT_IO = 2
EXIT_INSUFFICIENT_CLASS = 3
EXIT_VALIDATION = 4


class UsageError(Exception):
    """Conflicting or incomplete flag combinations (exit code 2)."""


def _normalize_worker(func_text: str):
    return normalize(func_text)


def _enrich_all(records, workers: int):
    """Normalize every record, optionally across a process pool.

    Results are keyed to input order either way, so worker count never
    changes the output.
    """
    if workers > 1 and len(records) > 1:
        with multiprocessing.Pool(workers) as pool:
            norms = pool.map(_normalize_worker, [r.func for r in records], chunksize=64)
    else:
        norms = [normalize(r.func) for r in records]
    return [
        corpus.EnrichedRecord(record=r, norm=n, key=corpus.content_key(n.normalized))
        for r, n in zip(records, norms)
    ]


def _status_counts(enriched) -> dict[str, int]:
    counts: dict[str, int] = {}
    for rec in enriched:
        counts[rec.norm.status.value] = counts.get(rec.norm.status.value, 0) + 1
    return {k: counts[k] for k in sorted(counts)}


def _cmd_normalize(args) -> int:
    loaded = corpus.load_jsonl(args.input)
    enriched = _enrich_all(loaded.records, args.workers)
    written = corpus.write_jsonl(enriched, args.output)
    statuses = _status_counts(enriched)
    summary = " ".join(f"{k}={v}" for k, v in statuses.items())
    print(f"normalized {written} records ({summary})")
    if loaded.diagnostics:
        print(f"skipped {len(loaded.diagnostics)} bad lines", file=sys.stderr)
    if args.report:
        write_json({**loaded.counts(), "status_counts": statuses}, args.report)
    return EXIT_OK


def _cmd_curate(args) -> int:
    loaded = corpus.load_enriched(args.input)
    retained, report = curator.refine(loaded.records)
    corpus.write_jsonl(retained, args.output)
    write_json(report.to_obj(), args.report)
    print(
        f"curated {report.total_in} -> {report.retained} records "
        f"(comment-only {report.comment_only_removed}, "
        f"exact duplicates {report.exact_duplicates_removed}, "
        f"label conflicts {report.conflict_records_removed})")
    if loaded.diagnostics:
        print(f"skipped {len(loaded.diagnostics)} bad lines", file=sys.stderr)
    return EXIT_OK


def _cmd_sample_split(args) -> int:
    spec = SplitSpec(
        train_fraction=args.train,
        val_fraction=args.val,
        test_fraction=args.test,
        seed=args.seed,
        per_class=args.per_class,
    )
    loaded = corpus.load_enriched(args.input, reenrich_missing=False)
    subset_indices = sampler.balance_sample(loaded.records, args.per_class, args.seed)
    subset = [loaded.records[i] for i in subset_indices]

    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    corpus.write_jsonl(subset, out_dir / "subset.jsonl")

    # Manifest indices point into subset.jsonl, not the input corpus.
    split = sampler.holdout_split(range(len(subset)), spec)
    write_json(sampler.split_manifest(split, len(subset)), out_dir / "split_manifest.json")
    for name, positions in (("train", split.train),
                            ("validation", split.validation),
                            ("test", split.test)):
        corpus.write_jsonl([subset[i] for i in positions], out_dir / f"{name}.jsonl")
    print(
        f"sampled {len(subset)} records ({args.per_class} per class); "
        f"split {len(split.train)}/{len(split.validation)}/{len(split.test)}")
    return EXIT_OK


def _make_counter(args):
    if args.counts_file:
        return load_external_counts(args.counts_file)
    return LexicalCounter(processed=args.processed)


def _cmd_stats(args) -> int:
    loaded = corpus.load_enriched(args.input, reenrich_missing=args.processed)
    stats = token_stats(loaded.records, args.limit, _make_counter(args))
    dist = label_distribution(loaded.records)
    report = emit_report(stats=stats, distribution=dist)
    print(render_report_text(report))
    if args.output:
        write_json(report, args.output)
    return EXIT_OK


def _load_predictions(path, n_records: int) -> tuple[list[int], list[int]]:
    """Read a predictions file and return (indices, predictions)."""
    indices: list[int] = []
    predictions: list[int] = []
    seen: set[int] = set()
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            obj = json.loads(line)
            if not isinstance(obj, dict) or "index" not in obj or "prediction" not in obj:
                raise ValueError(f"predictions line {line_no}: need index and prediction")
            index, pred = obj["index"], obj["prediction"]
            if not isinstance(index, int) or isinstance(index, bool) \
                    or not (0 <= index < n_records):
                raise ValueError(f"predictions line {line_no}: index {index!r} out of range")
            if index in seen:
                raise ValueError(f"predictions line {line_no}: duplicate index {index}")
            if isinstance(pred, bool) or pred not in (0, 1):
                raise ValueError(f"predictions line {line_no}: prediction must be 0 or 1")
            seen.add(index)
            indices.append(index)
            predictions.append(pred)
    return indices, predictions


def _cmd_metrics(args) -> int:
    loaded = corpus.load_jsonl(args.input)
    indices, predictions = _load_predictions(args.predictions, len(loaded.records))
    labels = [loaded.records[i].target for i in indices]
    report = classification_metrics(predictions, labels, Averaging(args.averaging))
    print(render_report_text({"metrics": report.to_obj()}))
    if args.output:
        write_json(report.to_obj(), args.output)
    return EXIT_OK


def _cmd_report(args) -> int:
    if (args.processed or args.counts_file) and not args.input:
        raise UsageError("--processed/--counts-file need --input")
    stats = dist = curation = metrics = None
    if args.input:
        loaded = corpus.load_enriched(args.input, reenrich_missing=args.processed)
        stats = token_stats(loaded.records, args.limit, _make_counter(args))
        dist = label_distribution(loaded.records)
    if args.curation_report:
        with open(args.curation_report, "r", encoding="utf-8") as fh:
            curation = json.load(fh)
    if args.metrics_file:
        with open(args.metrics_file, "r", encoding="utf-8") as fh:
            metrics = json.load(fh)
    report = emit_report(stats=stats, distribution=dist, curation=curation, metrics=metrics)
    print(render_report_text(report))
    if args.output:
        write_json(report, args.output)
    return EXIT_OK


def _add_stats_flags(sub) -> None:
    sub.add_argument("--limit", type=int, default=1024,
                     help="token budget; records strictly above it count as truncated")
    sub.add_argument("--processed", action="store_true",
                     help="measure normalized code instead of raw func text")
    sub.add_argument("--counts-file",
                     help='external counts jsonl: {"index": int, "tokens": int} per line')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vulncorpus",
        description="Curation pipeline for C/C++ vulnerability-detection corpora "
                    "(DiverseVul-shaped JSONL).",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("normalize", help="rewrite every record and attach vc_ fields")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--report", help="write a JSON run report here")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(handler=_cmd_normalize)

    p = subs.add_parser("curate", help="drop comment-only, duplicate, and conflicting records")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--report", required=True, help="write the curation report JSON here")
    p.set_defaults(handler=_cmd_curate)

    p = subs.add_parser("sample-split",
                        help="draw a balanced subset and split it train/validation/test")
    p.add_argument("--input", required=True)
    p.add_argument("--per-class", type=int, required=True, dest="per_class")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--train", type=float, default=0.70)
    p.add_argument("--val", type=float, default=0.15)
    p.add_argument("--test", type=float, default=0.15)
    p.add_argument("--output-dir", required=True, dest="output_dir")
    p.set_defaults(handler=_cmd_sample_split)

    p = subs.add_parser("stats", help="token-length and label statistics")
    p.add_argument("--input", required=True)
    _add_stats_flags(p)
    p.add_argument("--output", help="write the stats report JSON here")
    p.set_defaults(handler=_cmd_stats)

    p = subs.add_parser("metrics", help="classification metrics from a predictions file")
    p.add_argument("--input", required=True, help="corpus jsonl supplying the labels")
    p.add_argument("--predictions", required=True,
                   help='predictions jsonl: {"index": int, "prediction": 0|1} per line')
    p.add_argument("--averaging", choices=[a.value for a in Averaging],
                   default=Averaging.POSITIVE_CLASS.value)
    p.add_argument("--output", help="write the metrics JSON here")
    p.set_defaults(handler=_cmd_metrics)

    p = subs.add_parser("report", help="combine stats, curation, and metrics into one document")
    p.add_argument("--input", help="corpus jsonl for token/label statistics")
    _add_stats_flags(p)
    p.add_argument("--curation-report", dest="curation_report",
                   help="curation report JSON produced by `curate`")
    p.add_argument("--metrics-file", dest="metrics_file",
                   help="metrics JSON produced by `metrics`")
    p.add_argument("--output", help="write the combined report JSON here")
    p.set_defaults(handler=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (OSError, json.JSONDecodeError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InsufficientClass as exc:
        print(f"error: insufficient class data: {exc}", file=sys.stderr)
        return EXIT_INSUFFICIENT_CLASS
    except (SplitSpecError, LengthMismatch, EmptyInput, MissingCount, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
