"""Balanced subsampling and deterministic holdout splitting.

All randomness flows through one integer seed driving Python's Mersenne
Twister (``random.Random``); a given (data, spec) pair always produces
the same split. Bit-parity with other implementations is explicitly not
promised — consumers replay a split from its manifest, not from the
seed.

Split sizes follow floor/floor/remainder: train and validation get the
floor of their fraction of N (with a 1e-9 grace so binary float fractions
like .70 of 10000 land on the intended integer), test gets the rest, so
no record is ever lost to rounding.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

_EPS = 1e-9


class SplitSpecError(ValueError):
    pass


class InsufficientClass(ValueError):
    def __init__(self, label: int, have: int, need: int):
        super().__init__(f"class {label}: have {have} records, need {need}")
        self.label = label
        self.have = have
        self.need = need


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float
    val_fraction: float
    test_fraction: float
    seed: int
    per_class: int | None = None

    def __post_init__(self):
        for name, value in (("train", self.train_fraction),
                            ("val", self.val_fraction),
                            ("test", self.test_fraction)):
            if not (0.0 < value < 1.0):
                raise SplitSpecError(f"{name} fraction must be in (0, 1), got {value}")
        total = self.train_fraction + self.val_fraction + self.test_fraction
        if abs(total - 1.0) > _EPS:
            raise SplitSpecError(f"fractions must sum to 1, got {total}")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise SplitSpecError("seed must be an integer")
        if self.per_class is not None and self.per_class < 1:
            raise SplitSpecError(f"per_class must be >= 1, got {self.per_class}")


@dataclass
class DatasetSplit:
    train: list[int]
    validation: list[int]
    test: list[int]
    spec: SplitSpec = field(repr=False)


def _target_of(record) -> int:
    # Works for FunctionRecord and EnrichedRecord alike.
    return record.record.target if hasattr(record, "record") else record.target


def balance_sample(records: Sequence, per_class: int, seed: int) -> list[int]:
    """Indices of a balanced subset: exactly per_class per label.

    Each class's index list is shuffled (seeded Fisher–Yates) and its
    first per_class entries taken; the union is returned in ascending
    index order. Raises InsufficientClass before touching the RNG if a
    class is short.
    """
    if per_class < 1:
        raise SplitSpecError(f"per_class must be >= 1, got {per_class}")
    by_class: dict[int, list[int]] = {0: [], 1: []}
    for i, rec in enumerate(records):
        by_class[_target_of(rec)].append(i)
    for label in (0, 1):
        if len(by_class[label]) < per_class:
            raise InsufficientClass(label, len(by_class[label]), per_class)
    rng = random.Random(seed)
    selected: list[int] = []
    for label in (0, 1):
        pool = by_class[label][:]
        rng.shuffle(pool)
        selected.extend(pool[:per_class])
    selected.sort()
    return selected


def _floor_fraction(fraction: float, n: int) -> int:
    return int(fraction * n + _EPS)


def holdout_split(subset: Sequence[int], spec: SplitSpec) -> DatasetSplit:
    """Shuffle the subset once and slice it train/validation/test.

    Plain holdout: label proportions are not re-stratified.
    """
    if not subset:
        raise SplitSpecError("cannot split an empty subset")
    order = list(subset)
    rng = random.Random(spec.seed)
    rng.shuffle(order)
    n = len(order)
    n_train = _floor_fraction(spec.train_fraction, n)
    n_val = _floor_fraction(spec.val_fraction, n)
    return DatasetSplit(
        train=order[:n_train],
        validation=order[n_train:n_train + n_val],
        test=order[n_train + n_val:],
        spec=spec,
    )


def split_manifest(split: DatasetSplit, subset_size: int) -> dict:
    """JSON-ready manifest that lets any consumer replay the partition."""
    return {
        "schema": "vulncorpus-split-manifest/1",
        "seed": split.spec.seed,
        "fractions": {
            "train": split.spec.train_fraction,
            "validation": split.spec.val_fraction,
            "test": split.spec.test_fraction,
        },
        "per_class": split.spec.per_class,
        "subset_size": subset_size,
        "train": split.train,
        "validation": split.validation,
        "test": split.test,
    }
