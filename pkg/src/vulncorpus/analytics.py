"""Corpus statistics and binary classification metrics.

Token statistics run over a pluggable counter: the built-in lexical
counter (lexer tokens, whitespace and comments excluded) over either the
raw or the normalized text, or an external per-record counts file for
anyone holding subword-tokenizer numbers. Metrics are the usual
confusion-matrix quartet; degenerate denominators report 0.0 plus an
explicit flag instead of NaN so reports stay JSON-clean.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .corpus import EnrichedRecord
from .lexer import count_lexical_tokens, tokenize


class Averaging(str, enum.Enum):
    POSITIVE_CLASS = "positive_class"
    MACRO = "macro"


class LengthMismatch(ValueError):
    pass


class EmptyInput(ValueError):
    pass


class MissingCount(KeyError):
    def __init__(self, index: int):
        super().__init__(index)
        self.index = index


@dataclass
class TokenStats:
    count: int
    mean_tokens: float
    max_tokens: int
    over_limit_fraction: float
    limit: int
    tokenizer_id: str

    def to_obj(self) -> dict:
        return {
            "count": self.count,
            "mean_tokens": self.mean_tokens,
            "max_tokens": self.max_tokens,
            "over_limit_fraction": self.over_limit_fraction,
            "limit": self.limit,
            "tokenizer_id": self.tokenizer_id,
        }


@dataclass
class MetricsReport:
    tp: int
    fp: int
    tn: int
    fn: int
    accuracy: float
    precision: float
    recall: float
    f1: float
    averaging: Averaging
    degenerate_flags: set[str] = field(default_factory=set)

    def to_obj(self) -> dict:
        return {
            "tp": self.tp, "fp": self.fp, "tn": self.tn, "fn": self.fn,
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "averaging": self.averaging.value,
            "degenerate_flags": sorted(self.degenerate_flags),
        }


class LexicalCounter:
    """Counts lexer tokens of the raw func or of the normalized text."""

    def __init__(self, processed: bool = False):
        self.processed = processed
        self.tokenizer_id = "lexical"

    def __call__(self, index: int, record) -> int:
        if self.processed:
            if not isinstance(record, EnrichedRecord):
                raise ValueError("processed counting requires enriched records")
            text = record.norm.normalized
        else:
            text = record.record.func if isinstance(record, EnrichedRecord) else record.func
        return count_lexical_tokens(tokenize(text))


class ExternalCounter:
    """Counts supplied out-of-band, keyed by record index."""

    def __init__(self, counts: Mapping[int, int]):
        self.counts = dict(counts)
        self.tokenizer_id = "external"

    def __call__(self, index: int, record) -> int:
        try:
            return self.counts[index]
        except KeyError:
            raise MissingCount(index) from None


def load_external_counts(path) -> ExternalCounter:
    """Read a counts file: one {"index": int, "tokens": int} per line."""
    counts: dict[int, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            obj = json.loads(line)
            counts[int(obj["index"])] = int(obj["tokens"])
    return ExternalCounter(counts)


def token_stats(records: Sequence, limit: int, counter) -> TokenStats:
    """Mean/max token counts and the share strictly above the limit."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    tokenizer_id = getattr(counter, "tokenizer_id", "custom")
    n = len(records)
    if n == 0:
        return TokenStats(0, 0.0, 0, 0.0, limit, tokenizer_id)
    total = 0
    over = 0
    peak = 0
    for i, rec in enumerate(records):
        c = counter(i, rec)
        total += c
        peak = max(peak, c)
        if c > limit:
            over += 1
    return TokenStats(
        count=n,
        mean_tokens=total / n,
        max_tokens=peak,
        over_limit_fraction=over / n,
        limit=limit,
        tokenizer_id=tokenizer_id,
    )


def label_distribution(records: Sequence) -> dict[int, int]:
    dist: dict[int, int] = {}
    for rec in records:
        target = rec.record.target if isinstance(rec, EnrichedRecord) else rec.target
        dist[target] = dist.get(target, 0) + 1
    return dist


def _prf(tp: int, fp: int, fn: int, flags: set[str], suffix: str = "") -> tuple[float, float, float]:
    if tp + fp > 0:
        precision = tp / (tp + fp)
    else:
        precision = 0.0
        flags.add("precision_undefined" + suffix)
    if tp + fn > 0:
        recall = tp / (tp + fn)
    else:
        recall = 0.0
        flags.add("recall_undefined" + suffix)
    if precision + recall > 0:
        f1 = 2 * precision * recall / (precision + recall)
    else:
        f1 = 0.0
        flags.add("f1_undefined" + suffix)
    return precision, recall, f1


def classification_metrics(
    predictions: Sequence[int],
    labels: Sequence[int],
    averaging: Averaging | str = Averaging.POSITIVE_CLASS,
) -> MetricsReport:
    """Confusion counts and accuracy/precision/recall/F1 for 0/1 labels.

    positive_class treats label 1 as the positive class; macro averages
    the per-class scores of both classes.
    """
    averaging = Averaging(averaging)
    if len(predictions) != len(labels):
        raise LengthMismatch(f"{len(predictions)} predictions vs {len(labels)} labels")
    if not labels:
        raise EmptyInput("no prediction/label pairs")
    for value in predictions:
        if isinstance(value, bool) or value not in (0, 1):
            raise ValueError(f"prediction {value!r} is not 0 or 1")
    for value in labels:
        if isinstance(value, bool) or value not in (0, 1):
            raise ValueError(f"label {value!r} is not 0 or 1")

    tp = fp = tn = fn = 0
    for pred, label in zip(predictions, labels):
        if pred == 1 and label == 1:
            tp += 1
        elif pred == 1 and label == 0:
            fp += 1
        elif pred == 0 and label == 0:
            tn += 1
        else:
            fn += 1

    flags: set[str] = set()
    accuracy = (tp + tn) / (tp + fp + tn + fn)
    if averaging is Averaging.POSITIVE_CLASS:
        precision, recall, f1 = _prf(tp, fp, fn, flags)
    else:
        p1, r1, f1_pos = _prf(tp, fp, fn, flags, suffix="_class_1")
        # Class 0 as positive: its true positives are the tn cells.
        p0, r0, f1_neg = _prf(tn, fn, fp, flags, suffix="_class_0")
        precision = (p1 + p0) / 2
        recall = (r1 + r0) / 2
        f1 = (f1_pos + f1_neg) / 2

    return MetricsReport(
        tp=tp, fp=fp, tn=tn, fn=fn,
        accuracy=accuracy, precision=precision, recall=recall, f1=f1,
        averaging=averaging, degenerate_flags=flags,
    )


REPORT_SCHEMA = "vulncorpus-report/1"


def emit_report(stats: TokenStats | dict | None = None,
                distribution: dict[int, int] | None = None,
                curation: dict | None = None,
                metrics: MetricsReport | dict | None = None) -> dict:
    """Assemble the versioned report document from whatever is present.

    ``stats`` and ``metrics`` may be the live objects or their already
    serialized dicts (e.g. read back from a previous run's file).
    """
    if stats is None and distribution is None and curation is None and metrics is None:
        raise ValueError("report needs at least one section")
    report: dict = {"schema": REPORT_SCHEMA}
    if stats is not None:
        report["token_stats"] = stats.to_obj() if isinstance(stats, TokenStats) else stats
    if distribution is not None:
        report["label_distribution"] = {str(k): v for k, v in sorted(distribution.items())}
    if curation is not None:
        report["curation"] = curation
    if metrics is not None:
        report["metrics"] = metrics.to_obj() if isinstance(metrics, MetricsReport) else metrics
    return report


def render_report_text(report: dict) -> str:
    """Human-readable rendering of an emit_report document."""
    lines: list[str] = []
    if "token_stats" in report:
        s = report["token_stats"]
        lines.append(
            f"tokens ({s['tokenizer_id']}): n={s['count']} mean={s['mean_tokens']:.2f} "
            f"max={s['max_tokens']} over {s['limit']}-token limit: "
            f"{100.0 * s['over_limit_fraction']:.2f}%")
    if "label_distribution" in report:
        dist = report["label_distribution"]
        total = sum(dist.values())
        parts = ", ".join(f"{k}: {v}" for k, v in dist.items())
        lines.append(f"labels: {parts} (total {total})")
    if "curation" in report:
        c = report["curation"]
        lines.append(
            f"curation: {c['total_in']} in, {c['retained']} retained "
            f"({c['comment_only_removed']} comment-only, "
            f"{c['exact_duplicates_removed']} exact duplicates, "
            f"{c['conflict_records_removed']} label-conflict records removed)")
    if "metrics" in report:
        m = report["metrics"]
        lines.append(
            f"metrics ({m['averaging']}): acc={m['accuracy']:.4f} p={m['precision']:.4f} "
            f"r={m['recall']:.4f} f1={m['f1']:.4f} "
            f"[tp={m['tp']} fp={m['fp']} tn={m['tn']} fn={m['fn']}]")
        if m["degenerate_flags"]:
            lines.append("  flags: " + ", ".join(m["degenerate_flags"]))
    return "\n".join(lines)


def write_json(obj: dict, path) -> None:
    """Byte-stable JSON writer shared by report-producing commands."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")
