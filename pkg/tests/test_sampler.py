import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vulncorpus.corpus import FunctionRecord
from vulncorpus.sampler import (
    InsufficientClass,
    SplitSpec,
    SplitSpecError,
    balance_sample,
    holdout_split,
    split_manifest,
)


def records_with_labels(labels):
    return [FunctionRecord(func="int f(){return 0;}", target=t) for t in labels]


def spec(train=0.70, val=0.15, test=0.15, seed=1234, per_class=None):
    return SplitSpec(train_fraction=train, val_fraction=val, test_fraction=test,
                     seed=seed, per_class=per_class)


class TestSplitSpec:
    def test_valid(self):
        s = spec()
        assert s.train_fraction == 0.70

    @pytest.mark.parametrize("bad", [
        dict(train=0.0, val=0.5, test=0.5),
        dict(train=1.0, val=0.15, test=0.15),
        dict(train=-0.1, val=0.6, test=0.5),
        dict(train=0.5, val=0.3, test=0.3),   # sums to 1.1
        dict(train=0.5, val=0.25, test=0.2),  # sums to 0.95
    ])
    def test_bad_fractions_rejected(self, bad):
        with pytest.raises(SplitSpecError):
            spec(**bad)

    def test_per_class_zero_rejected(self):
        with pytest.raises(SplitSpecError):
            spec(per_class=0)

    def test_seed_must_be_integer(self):
        with pytest.raises(SplitSpecError):
            spec(seed="42")


class TestBalanceSample:
    def test_exact_per_class(self):
        rng = random.Random(5)
        labels = [rng.randrange(2) for _ in range(500)] + [0] * 60 + [1] * 60
        records = records_with_labels(labels)
        chosen = balance_sample(records, per_class=50, seed=7)
        assert len(chosen) == 100
        counts = {0: 0, 1: 0}
        for i in chosen:
            counts[records[i].target] += 1
        assert counts == {0: 50, 1: 50}
        assert len(set(chosen)) == 100
        assert chosen == sorted(chosen)

    def test_insufficient_class_raised_with_counts(self):
        records = records_with_labels([0] * 10 + [1] * 4)
        with pytest.raises(InsufficientClass) as exc:
            balance_sample(records, per_class=5, seed=1)
        assert exc.value.label == 1
        assert exc.value.have == 4
        assert exc.value.need == 5

    def test_per_class_zero_rejected(self):
        with pytest.raises(SplitSpecError):
            balance_sample(records_with_labels([0, 1]), per_class=0, seed=1)

    def test_deterministic(self):
        records = records_with_labels([i % 2 for i in range(200)])
        assert balance_sample(records, 30, seed=11) == balance_sample(records, 30, seed=11)
        assert balance_sample(records, 30, seed=11) != balance_sample(records, 30, seed=12)


class TestHoldoutSplit:
    def test_paper_instance_sizes(self):
        split = holdout_split(range(10_000), spec())
        assert (len(split.train), len(split.validation), len(split.test)) == (7000, 1500, 1500)

    def test_floor_floor_remainder(self):
        split = holdout_split(range(10), spec())
        assert (len(split.train), len(split.validation), len(split.test)) == (7, 1, 2)

    def test_n4_gives_2_0_2(self):
        split = holdout_split(range(4), spec())
        assert (len(split.train), len(split.validation), len(split.test)) == (2, 0, 2)

    def test_partition_properties(self):
        subset = list(range(100, 400, 3))
        split = holdout_split(subset, spec(seed=99))
        together = split.train + split.validation + split.test
        assert sorted(together) == sorted(subset)
        assert len(set(together)) == len(subset)

    def test_same_seed_identical(self):
        subset = list(range(50))
        a = holdout_split(subset, spec(seed=321))
        b = holdout_split(subset, spec(seed=321))
        assert (a.train, a.validation, a.test) == (b.train, b.validation, b.test)

    def test_empty_subset_rejected(self):
        with pytest.raises(SplitSpecError):
            holdout_split([], spec())

    def test_seed_sensitivity(self):
        # Different seeds permute differently with overwhelming probability;
        # across 30 seed pairs at N=50 at least 29 must differ.
        subset = list(range(50))
        differing = sum(
            holdout_split(subset, spec(seed=s)).train
            != holdout_split(subset, spec(seed=s + 1000)).train
            for s in range(30)
        )
        assert differing >= 29

    @given(st.integers(min_value=1, max_value=5000),
           st.integers(min_value=1, max_value=98),
           st.integers(min_value=0, max_value=2**63 - 1))
    @settings(max_examples=200, deadline=None)
    def test_partition_property_random(self, n, train_pct, seed):
        remaining = 100 - train_pct
        val_pct = remaining // 2
        test_pct = remaining - val_pct
        if val_pct == 0 or test_pct == 0:
            return
        s = spec(train_pct / 100, val_pct / 100, test_pct / 100, seed=seed)
        split = holdout_split(range(n), s)
        assert len(split.train) == int(s.train_fraction * n + 1e-9)
        assert len(split.validation) == int(s.val_fraction * n + 1e-9)
        assert len(split.train) + len(split.validation) + len(split.test) == n
        union = set(split.train) | set(split.validation) | set(split.test)
        assert union == set(range(n))


class TestManifest:
    def test_manifest_replays_partition(self):
        s = spec(seed=77, per_class=5)
        split = holdout_split(range(10), s)
        manifest = split_manifest(split, subset_size=10)
        assert manifest["seed"] == 77
        assert manifest["fractions"] == {"train": 0.70, "validation": 0.15, "test": 0.15}
        assert manifest["per_class"] == 5
        assert manifest["train"] == split.train
        assert manifest["validation"] == split.validation
        assert manifest["test"] == split.test
        assert manifest["subset_size"] == 10
