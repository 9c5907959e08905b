"""Tests for synthetic generation, record filtering, balancing and splitting."""

import math
from collections import Counter

import pytest
from pydantic import ValidationError

from sha_lab.core.exceptions import (
    ConfigError,
    DegenerateSplitError,
    EmptyClassError,
    InvalidClassSpecError,
)
from sha_lab.core.schemas.curves import CurveRecord, Dataset, SplitSpec
from sha_lab.core.schemas.experiments import ClassFilter
from sha_lab.core.utils.primes import FIRST_100_PRIMES, is_prime
from sha_lab.core.utils.rng import make_rng, round_half_away
from sha_lab.curvedata.bsd import compute_sha_from_bsd
from sha_lab.curvedata.sampling import (
    apply_class_filter,
    balanced_subset,
    filter_records,
    train_test_split,
)
from sha_lab.curvedata.synthetic import allocate_counts, synthesize_dataset


def _simple(label: str, rank: int, sha: int, conductor: int | None = 100) -> CurveRecord:
    return CurveRecord(label=label, conductor=conductor, rank=rank, sha_order=sha)


# ---- Random streams ----


class TestRng:
    def test_streams_are_reproducible(self):
        a = make_rng(42, "split").permutation(50)
        b = make_rng(42, "split").permutation(50)
        assert a.tolist() == b.tolist()

    def test_streams_are_independent(self):
        a = make_rng(42, "split").random(8)
        b = make_rng(42, "balance", 0).random(8)
        assert a.tolist() != b.tolist()

    def test_rejects_out_of_range_seed(self):
        with pytest.raises(ValueError):
            make_rng(-1)

    @pytest.mark.parametrize(
        "value, expected",
        [
            (0.5, 1),
            (1.5, 2),
            (2.5, 3),
            (-0.5, -1),
            (1.49, 1),
            (0.49999999999999994, 0),
            (-0.49999999999999994, 0),
            (4503599627370497.0, 4503599627370497),
        ],
    )
    def test_round_half_away(self, value: float, expected: int):
        assert round_half_away(value) == expected


# ---- Synthetic generator ----


class TestAllocateCounts:
    def test_largest_remainder_ties_go_first(self):
        assert allocate_counts(10, {1: 1.0, 4: 1.0, 9: 1.0}) == {1: 4, 4: 3, 9: 3}

    def test_weights_are_relative(self):
        assert allocate_counts(100, {4: 50.0, 9: 150.0}) == {4: 25, 9: 75}

    @pytest.mark.parametrize("spec", [{}, {2: 1.0}, {4: 0.0}, {9: -1.0}])
    def test_invalid_specs(self, spec: dict[int, float]):
        with pytest.raises(InvalidClassSpecError):
            allocate_counts(10, spec)


class TestSynthesizeDataset:
    @pytest.fixture
    def dataset(self) -> Dataset:
        return synthesize_dataset(300, {1: 1.0, 4: 1.0, 9: 1.0}, seed=13, include_ap=True)

    def test_deterministic(self, dataset):
        again = synthesize_dataset(300, {1: 1.0, 4: 1.0, 9: 1.0}, seed=13, include_ap=True)
        assert again.records == dataset.records
        other = synthesize_dataset(300, {1: 1.0, 4: 1.0, 9: 1.0}, seed=14, include_ap=True)
        assert other.records != dataset.records

    def test_class_counts(self, dataset):
        counts = Counter(rec.sha_order for rec in dataset.records)
        assert counts == {1: 100, 4: 100, 9: 100}

    def test_bsd_identity_holds(self, dataset):
        for rec in dataset.records:
            assert compute_sha_from_bsd(rec) == pytest.approx(rec.sha_order, rel=1e-10)

    def test_rank_zero_has_unit_regulator(self, dataset):
        rank_zero = [rec for rec in dataset.records if rec.rank == 0]
        assert rank_zero
        assert all(rec.regulator == 1.0 for rec in rank_zero)

    def test_ap_values_respect_hasse_bound(self, dataset):
        for rec in dataset.records[:20]:
            assert rec.ap_values is not None and len(rec.ap_values) == 100
            for p, ap in zip(FIRST_100_PRIMES, rec.ap_values):
                assert abs(ap) <= 2 * math.sqrt(p)

    def test_labels_and_provenance(self, dataset):
        assert dataset.labels[0] == "syn.000"
        assert dataset.seed == 13
        assert dataset.source == "synthetic:seed=13"

    def test_prime_conductors(self):
        ds = synthesize_dataset(
            30, {4: 1.0}, seed=2, prime_conductor=True, conductor_min=1000, conductor_max=5000
        )
        assert all(rec.conductor is not None and is_prime(rec.conductor) for rec in ds.records)

    def test_rejects_empty_request(self):
        with pytest.raises(ConfigError):
            synthesize_dataset(0, {4: 1.0})


# ---- Filtering, balancing and splitting ----


class TestFilterRecords:
    @pytest.fixture
    def dataset(self) -> Dataset:
        return Dataset(
            records=(
                _simple("a", 0, 1, 11),
                _simple("b", 1, 4, 37),
                _simple("c", 2, 9, 389),
                _simple("d", 0, 16, 1000),
                _simple("e", 0, 25, None),
            ),
            source="test",
        )

    def test_rank_bounds(self, dataset):
        kept = filter_records(dataset, ClassFilter(min_rank=1, max_rank=1))
        assert kept.labels == ["b"]

    def test_conductor_bounds_drop_unknown_conductor(self, dataset):
        kept = filter_records(dataset, ClassFilter(min_conductor=30, max_conductor=500))
        assert kept.labels == ["b", "c"]

    def test_prime_conductor_only(self, dataset):
        kept = filter_records(dataset, ClassFilter(prime_conductor_only=True))
        assert kept.labels == ["a", "b", "c"]

    def test_sha_orders(self, dataset):
        assert filter_records(dataset, ClassFilter(sha_orders=[4, 16])).labels == ["b", "d"]

    def test_top_sha_values(self, dataset):
        assert filter_records(dataset, ClassFilter(top_sha_values=2)).labels == ["d", "e"]


class TestBalancing:
    def test_balanced_subset_equalizes_classes(self, mixed_sha):
        balanced = balanced_subset(mixed_sha, "sha_order", [1, 4, 9], seed=0)
        counts = Counter(rec.sha_order for rec in balanced.records)
        assert counts[1] == counts[4] == counts[9] == 120

    def test_balanced_subset_keeps_input_order(self, mixed_sha):
        balanced = balanced_subset(mixed_sha, "sha_order", [1, 4, 9], seed=0)
        position = {label: i for i, label in enumerate(mixed_sha.labels)}
        indices = [position[label] for label in balanced.labels]
        assert indices == sorted(indices)

    def test_empty_class(self, mixed_sha):
        with pytest.raises(EmptyClassError):
            balanced_subset(mixed_sha, "sha_order", [4, 25], seed=0)

    def test_apply_class_filter_balances(self, mixed_sha):
        selected = apply_class_filter(mixed_sha, ClassFilter(sha_orders=[1, 4]), seed=3)
        counts = Counter(rec.sha_order for rec in selected.records)
        assert counts == {1: 120, 4: 120}

    def test_apply_class_filter_without_balance(self, mixed_sha):
        selected = apply_class_filter(
            mixed_sha, ClassFilter(sha_orders=[1, 4], balance=False), seed=3
        )
        assert len(selected) == 480


class TestTrainTestSplit:
    def test_sizes_and_disjointness(self, four_vs_nine):
        train, test = train_test_split(four_vs_nine, SplitSpec(test_fraction=0.2, seed=1))
        assert len(test) == 120
        assert len(train) == 480
        assert not set(train.labels) & set(test.labels)
        assert train.source.endswith("#train")

    def test_deterministic_per_seed(self, four_vs_nine):
        first = train_test_split(four_vs_nine, SplitSpec(seed=1))[1].labels
        again = train_test_split(four_vs_nine, SplitSpec(seed=1))[1].labels
        other = train_test_split(four_vs_nine, SplitSpec(seed=2))[1].labels
        assert first == again
        assert first != other

    def test_too_small(self, curve_11a1):
        ds = Dataset(records=(curve_11a1,), source="one")
        with pytest.raises(DegenerateSplitError):
            train_test_split(ds, SplitSpec())

    def test_empty_side(self, curve_11a1, curve_37a1):
        ds = Dataset(records=(curve_11a1, curve_37a1), source="two")
        with pytest.raises(DegenerateSplitError):
            train_test_split(ds, SplitSpec(test_fraction=0.2))


class TestDatasetWithRecords:
    def test_keeps_provenance(self, four_vs_nine):
        derived = four_vs_nine.with_records(four_vs_nine.records[:3])
        assert derived.labels == four_vs_nine.labels[:3]
        assert derived.source == four_vs_nine.source
        assert derived.seed == four_vs_nine.seed

    def test_rejects_duplicate_labels(self, curve_11a1, curve_37a1):
        ds = Dataset(records=(curve_11a1, curve_37a1), source="two")
        with pytest.raises(ValidationError, match="duplicate label"):
            ds.with_records([curve_11a1, curve_37a1, curve_11a1])
