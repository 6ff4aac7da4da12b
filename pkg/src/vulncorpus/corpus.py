"""Line-delimited JSON ingestion and persistence for function corpora.

Records follow the DiverseVul layout: ``func`` (C/C++ source), ``target``
(0/1 label), plus ``cwe``/``project``/``commit_id``/``size``/``message``
metadata. Unrecognized fields survive round trips verbatim in
``extras``. Enrichment results are written under the reserved ``vc_``
prefix (``vc_normalized``, ``vc_status``, ``vc_key``, ``vc_orig_tokens``,
``vc_norm_tokens``, optionally ``vc_subword_tokens``); keys with that
prefix are never treated as upstream data.

Dirty input is survivable by design: malformed lines and field problems
are skipped, counted, and reported, never fatal.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Iterator

from .normalizer import NormalizationResult, NormalizationStatus, normalize

_CWE_PATTERN_DESC = "CWE- followed by digits"

TABLE_FIELDS = ("func", "target", "cwe", "project", "commit_id", "size", "message")
ENRICHMENT_PREFIX = "vc_"


@dataclass
class FunctionRecord:
    func: str
    target: int
    cwe: list[str] = field(default_factory=list)
    project: str = ""
    commit_id: str = ""
    size: int = 0
    message: str = ""
    extras: dict[str, Any] = field(default_factory=dict)


@dataclass
class EnrichedRecord:
    record: FunctionRecord
    norm: NormalizationResult
    key: str


@dataclass(frozen=True)
class LoadDiagnostic:
    kind: str  # "malformed_line" | "missing_field" | "invalid_field"
    line_no: int
    detail: str


@dataclass
class LoadResult:
    """Records in file order plus the skipped-line diagnostics."""

    records: list
    diagnostics: list[LoadDiagnostic]
    lines_read: int = 0

    def __iter__(self):
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __getitem__(self, i):
        return self.records[i]

    def counts(self) -> dict[str, int]:
        by_kind = {"malformed_line": 0, "missing_field": 0, "invalid_field": 0}
        for d in self.diagnostics:
            by_kind[d.kind] += 1
        return {
            "lines_read": self.lines_read,
            "ok": len(self.records),
            "malformed_lines": by_kind["malformed_line"],
            "missing_fields": by_kind["missing_field"],
            "invalid_fields": by_kind["invalid_field"],
        }


class _FieldProblem(Exception):
    def __init__(self, kind: str, detail: str):
        super().__init__(detail)
        self.kind = kind
        self.detail = detail


def _require_str(obj: dict, name: str, default: str = "") -> str:
    value = obj.get(name, default)
    if value is None:
        return default
    if not isinstance(value, str):
        raise _FieldProblem("invalid_field", f"{name} must be a string")
    return value


def parse_record(obj: Any) -> FunctionRecord:
    """Validate one decoded JSON object into a FunctionRecord.

    Raises _FieldProblem on missing/invalid fields; vc_-prefixed keys are
    reserved for enrichment and never land in extras.
    """
    if not isinstance(obj, dict):
        raise _FieldProblem("malformed_line", "line is not a JSON object")
    if "func" not in obj:
        raise _FieldProblem("missing_field", "func")
    func = obj["func"]
    if not isinstance(func, str) or not func:
        raise _FieldProblem("invalid_field", "func must be a nonempty string")
    if "target" not in obj:
        raise _FieldProblem("missing_field", "target")
    target = obj["target"]
    if isinstance(target, bool) or target not in (0, 1):
        raise _FieldProblem("invalid_field", "target must be 0 or 1")

    cwe_raw = obj.get("cwe")
    cwe: list[str] = []
    if cwe_raw is not None:
        if not isinstance(cwe_raw, list):
            raise _FieldProblem("invalid_field", "cwe must be a list")
        for entry in cwe_raw:
            if not isinstance(entry, str) or not entry.startswith("CWE-") \
                    or not entry[4:].isdigit():
                raise _FieldProblem(
                    "invalid_field", f"cwe entry {entry!r} does not match {_CWE_PATTERN_DESC}")
            cwe.append(entry)

    size = obj.get("size", 0)
    if size is None:
        size = 0
    if isinstance(size, bool) or not isinstance(size, int):
        raise _FieldProblem("invalid_field", "size must be an integer")

    extras = {
        k: v for k, v in obj.items()
        if k not in TABLE_FIELDS and not k.startswith(ENRICHMENT_PREFIX)
    }
    return FunctionRecord(
        func=func,
        target=target,
        cwe=cwe,
        project=_require_str(obj, "project"),
        commit_id=_require_str(obj, "commit_id"),
        size=size,
        message=_require_str(obj, "message"),
        extras=extras,
    )


def iter_jsonl(path: str | Path) -> Iterator[tuple[int, Any, LoadDiagnostic | None]]:
    """Yield (line_no, decoded_obj_or_None, diagnostic_or_None) per line.

    Blank lines are skipped silently; undecodable lines yield a
    malformed_line diagnostic.
    """
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                yield line_no, json.loads(line), None
            except json.JSONDecodeError as exc:
                yield line_no, None, LoadDiagnostic("malformed_line", line_no, str(exc))


def load_jsonl(path: str | Path) -> LoadResult:
    """Load FunctionRecords in file order, skipping and counting bad lines."""
    records: list[FunctionRecord] = []
    diagnostics: list[LoadDiagnostic] = []
    lines = 0
    for line_no, obj, diag in iter_jsonl(path):
        lines = line_no
        if diag is not None:
            diagnostics.append(diag)
            continue
        try:
            records.append(parse_record(obj))
        except _FieldProblem as exc:
            diagnostics.append(LoadDiagnostic(exc.kind, line_no, exc.detail))
    return LoadResult(records=records, diagnostics=diagnostics, lines_read=lines)


def content_key(normalized: str) -> str:
    """Identity digest of normalized code (MD5; identity, not security)."""
    return hashlib.md5(normalized.encode("utf-8")).hexdigest()


def enrich(record: FunctionRecord, subword_counter=None) -> EnrichedRecord:
    """Attach the normalization result and its content digest."""
    norm = normalize(record.func, subword_counter=subword_counter)
    return EnrichedRecord(record=record, norm=norm, key=content_key(norm.normalized))


def _enrichment_from_obj(obj: dict) -> tuple[NormalizationResult, str] | None:
    needed = ("vc_normalized", "vc_status", "vc_key", "vc_orig_tokens", "vc_norm_tokens")
    if not isinstance(obj, dict) or any(k not in obj for k in needed):
        return None
    try:
        status = NormalizationStatus(obj["vc_status"])
    except ValueError:
        return None
    norm = NormalizationResult(
        normalized=obj["vc_normalized"],
        status=status,
        identifier_map={},  # not persisted; recompute via enrich() if needed
        orig_token_count=obj["vc_orig_tokens"],
        norm_token_count=obj["vc_norm_tokens"],
        subword_token_count=obj.get("vc_subword_tokens"),
    )
    return norm, obj["vc_key"]


def load_enriched(path: str | Path, reenrich_missing: bool = True) -> LoadResult:
    """Load records with their vc_ enrichment.

    Lines whose vc_ fields are complete are reconstructed as-is; others
    are normalized on the fly when ``reenrich_missing`` is set, else kept
    as plain FunctionRecords.
    """
    records: list = []
    diagnostics: list[LoadDiagnostic] = []
    lines = 0
    for line_no, obj, diag in iter_jsonl(path):
        lines = line_no
        if diag is not None:
            diagnostics.append(diag)
            continue
        try:
            record = parse_record(obj)
        except _FieldProblem as exc:
            diagnostics.append(LoadDiagnostic(exc.kind, line_no, exc.detail))
            continue
        parsed = _enrichment_from_obj(obj)
        if parsed is not None:
            norm, key = parsed
            records.append(EnrichedRecord(record=record, norm=norm, key=key))
        elif reenrich_missing:
            records.append(enrich(record))
        else:
            records.append(record)
    return LoadResult(records=records, diagnostics=diagnostics, lines_read=lines)


def record_to_obj(record) -> dict:
    """Serialize with a stable field order.

    Table fields first, extras alphabetically, then enrichment fields.
    """
    if isinstance(record, EnrichedRecord):
        base, enr = record.record, record
    else:
        base, enr = record, None
    obj: dict[str, Any] = {
        "func": base.func,
        "target": base.target,
        "cwe": list(base.cwe),
        "project": base.project,
        "commit_id": base.commit_id,
        "size": base.size,
        "message": base.message,
    }
    for k in sorted(base.extras):
        obj[k] = base.extras[k]
    if enr is not None:
        obj["vc_normalized"] = enr.norm.normalized
        obj["vc_status"] = enr.norm.status.value
        obj["vc_key"] = enr.key
        obj["vc_orig_tokens"] = enr.norm.orig_token_count
        obj["vc_norm_tokens"] = enr.norm.norm_token_count
        if enr.norm.subword_token_count is not None:
            obj["vc_subword_tokens"] = enr.norm.subword_token_count
    return obj


def write_jsonl(records: Iterable, path: str | Path) -> int:
    """Write one JSON object per line; returns the number written.

    Writes via a temp file and renames into place so an IO failure never
    leaves a partial corpus behind.
    """
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    count = 0
    try:
        with open(tmp, "w", encoding="utf-8") as fh:
            for record in records:
                fh.write(json.dumps(record_to_obj(record), ensure_ascii=False))
                fh.write("\n")
                count += 1
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise
    return count
