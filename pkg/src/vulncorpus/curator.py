"""Duplicate and faulty-entry detection over enriched corpora.

Identity is the digest of the normalized code, so records that differ
only in identifier names collide into one group. The refine pass drops
comment-only records, keeps the first member of each same-label
duplicate group, and drops every member of a group whose labels disagree
(no adjudication: conflicting labels are noise either way). Records that
merely failed processing (MacroError/LexError) stay in, flagged via
their status, and still participate in dedup.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Sequence

from .corpus import EnrichedRecord
from .normalizer import NormalizationStatus


class GroupVerdict(str, enum.Enum):
    EXACT_DUPLICATE = "ExactDuplicate"
    LABEL_CONFLICT = "LabelConflict"


@dataclass
class DuplicateGroup:
    key: str
    members: list[int]              # record indices, input order
    labels: Counter                 # multiset of member targets


@dataclass
class CurationReport:
    total_in: int = 0
    ok: int = 0
    macro_error: int = 0
    lex_error: int = 0
    comment_only_removed: int = 0
    exact_duplicates_removed: int = 0
    conflict_groups_removed: int = 0
    conflict_records_removed: int = 0
    retained: int = 0
    # Both readings of "how many duplicates": groups and implicated rows.
    duplicate_groups: int = 0
    duplicate_records: int = 0

    def to_obj(self) -> dict:
        return asdict(self)


def group_duplicates(records: Sequence[EnrichedRecord]) -> list[DuplicateGroup]:
    """Groups of records sharing a content key (comment-only excluded).

    Groups are ordered by their first member's index; members keep input
    order.
    """
    by_key: dict[str, list[int]] = {}
    for i, rec in enumerate(records):
        if rec.norm.status is NormalizationStatus.COMMENT_ONLY:
            continue
        by_key.setdefault(rec.key, []).append(i)
    groups = [
        DuplicateGroup(key=key, members=members,
                       labels=Counter(records[i].record.target for i in members))
        for key, members in by_key.items() if len(members) >= 2
    ]
    groups.sort(key=lambda g: g.members[0])
    return groups


def classify_group(group: DuplicateGroup) -> GroupVerdict:
    """LabelConflict iff both classes appear among the members."""
    if group.labels.get(0, 0) > 0 and group.labels.get(1, 0) > 0:
        return GroupVerdict.LABEL_CONFLICT
    return GroupVerdict.EXACT_DUPLICATE


def refine(records: Sequence[EnrichedRecord]) -> tuple[list[EnrichedRecord], CurationReport]:
    """Apply the removal policy and account for every record.

    Removals, in order: comment-only records; non-first members of
    same-label duplicate groups; all members of label-conflict groups.
    Retained records keep input order.
    """
    report = CurationReport(total_in=len(records))
    for rec in records:
        status = rec.norm.status
        if status is NormalizationStatus.OK:
            report.ok += 1
        elif status is NormalizationStatus.MACRO_ERROR:
            report.macro_error += 1
        elif status is NormalizationStatus.LEX_ERROR:
            report.lex_error += 1

    drop: set[int] = set()
    for i, rec in enumerate(records):
        if rec.norm.status is NormalizationStatus.COMMENT_ONLY:
            drop.add(i)
            report.comment_only_removed += 1

    groups = group_duplicates(records)
    report.duplicate_groups = len(groups)
    report.duplicate_records = sum(len(g.members) for g in groups)
    for group in groups:
        if classify_group(group) is GroupVerdict.LABEL_CONFLICT:
            drop.update(group.members)
            report.conflict_groups_removed += 1
            report.conflict_records_removed += len(group.members)
        else:
            drop.update(group.members[1:])
            report.exact_duplicates_removed += len(group.members) - 1

    retained = [rec for i, rec in enumerate(records) if i not in drop]
    report.retained = len(retained)
    assert report.retained == report.total_in - report.comment_only_removed \
        - report.exact_duplicates_removed - report.conflict_records_removed
    return retained, report
