"""Dataset construction, synthetic generation, splitting, CSV ingestion."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boostbound import (
    Dataset,
    SyntheticConfig,
    generate_synthetic,
    load_csv,
    select_features,
    split_half,
)


def small_dataset(m=6, n=3, seed=0):
    rng = np.random.default_rng(seed)
    features = rng.standard_normal((m, n))
    labels = np.where(rng.standard_normal(m) >= 0, 1.0, -1.0)
    return Dataset(features=features, labels=labels)


class TestDatasetInvariants:
    def test_rejects_bad_labels(self):
        with pytest.raises(ValueError, match="label"):
            Dataset(features=np.zeros((2, 1)), labels=np.array([1.0, 0.5]))

    def test_rejects_nan_features(self):
        with pytest.raises(ValueError, match="NaN|infinite"):
            Dataset(features=np.array([[np.nan]]), labels=np.array([1.0]))

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError, match="length"):
            Dataset(features=np.zeros((3, 1)), labels=np.array([1.0, -1.0]))

    def test_rejects_bad_feature_names(self):
        with pytest.raises(ValueError, match="feature_names"):
            Dataset(
                features=np.zeros((1, 2)),
                labels=np.array([1.0]),
                feature_names=("only_one",),
            )

    def test_rows_are_immutable(self):
        ds = small_dataset()
        with pytest.raises(ValueError):
            ds.features[0, 0] = 99.0


class TestSyntheticConfig:
    def test_defaults_match_generator_parameters(self):
        cfg = SyntheticConfig(n_features=3, m_total=10, seed=1)
        assert cfg.class_sep == 0.5
        assert cfg.flip_y == 0.05

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(m_total=1),
            dict(class_sep=-0.1),
            dict(flip_y=1.5),
            dict(flip_y=-0.01),
            dict(n_features=0),
        ],
    )
    def test_rejects_invalid(self, kwargs):
        base = dict(n_features=2, m_total=4, seed=0)
        base.update(kwargs)
        with pytest.raises(ValueError):
            SyntheticConfig(**base)


class TestGenerateSynthetic:
    def test_balanced_assignment_without_flips(self):
        ds = generate_synthetic(
            SyntheticConfig(n_features=2, m_total=4, flip_y=0.0, seed=5)
        )
        assert int(np.sum(ds.labels == 1.0)) == 2
        assert int(np.sum(ds.labels == -1.0)) == 2

    def test_odd_total_gives_extra_positive(self):
        ds = generate_synthetic(
            SyntheticConfig(n_features=2, m_total=7, flip_y=0.0, seed=5)
        )
        assert int(np.sum(ds.labels == 1.0)) == 4

    def test_zero_separation_means_coincide(self):
        # Same seed, different separation: identical Gaussian draws, so the
        # datasets differ by exactly the +/- class_sep/sqrt(n) offset.
        n, sep = 4, 0.8
        flat = generate_synthetic(
            SyntheticConfig(n_features=n, m_total=10, class_sep=0.0, flip_y=0.0, seed=3)
        )
        apart = generate_synthetic(
            SyntheticConfig(n_features=n, m_total=10, class_sep=sep, flip_y=0.0, seed=3)
        )
        offset = sep / math.sqrt(n)
        expected = flat.features + flat.labels[:, None] * offset
        np.testing.assert_allclose(apart.features, expected, rtol=0, atol=1e-12)

    def test_flips_change_labels_not_features(self):
        base = SyntheticConfig(n_features=3, m_total=50, flip_y=0.0, seed=11)
        flipped = SyntheticConfig(n_features=3, m_total=50, flip_y=0.3, seed=11)
        a, b = generate_synthetic(base), generate_synthetic(flipped)
        np.testing.assert_array_equal(a.features, b.features)
        assert np.any(a.labels != b.labels)

    def test_flip_fraction_within_binomial_interval(self):
        # Central 99.9% interval for Binomial(100000, 0.05), computed with
        # scipy.stats.binom.ppf(0.0005 / 0.9995, 100000, 0.05): [4775, 5228].
        m = 100_000
        ds = generate_synthetic(
            SyntheticConfig(n_features=2, m_total=m, flip_y=0.05, seed=123)
        )
        pre_flip = np.concatenate([np.ones(m // 2), -np.ones(m // 2)])
        flips = int(np.sum(ds.labels != pre_flip))
        assert 4775 <= flips <= 5228

    def test_deterministic_given_seed(self):
        cfg = SyntheticConfig(n_features=3, m_total=20, seed=9)
        a, b = generate_synthetic(cfg), generate_synthetic(cfg)
        np.testing.assert_array_equal(a.features, b.features)
        np.testing.assert_array_equal(a.labels, b.labels)


class TestSplitHalf:
    def test_even_split(self):
        pair = split_half(small_dataset(m=10), seed=1)
        assert pair.train.n_rows == 5
        assert pair.test.n_rows == 5

    def test_odd_split_extra_row_to_train(self):
        pair = split_half(small_dataset(m=11), seed=1)
        assert pair.train.n_rows == 6
        assert pair.test.n_rows == 5

    def test_deterministic(self):
        ds = small_dataset(m=10)
        a, b = split_half(ds, seed=4), split_half(ds, seed=4)
        np.testing.assert_array_equal(a.train.features, b.train.features)
        np.testing.assert_array_equal(a.test.labels, b.test.labels)

    def test_rejects_tiny_dataset(self):
        with pytest.raises(ValueError, match="at least 2"):
            split_half(small_dataset(m=1), seed=0)

    @settings(max_examples=30, deadline=None)
    @given(m=st.integers(2, 40), seed=st.integers(0, 2**32 - 1))
    def test_union_is_source_multiset(self, m, seed):
        ds = small_dataset(m=m, n=2, seed=7)
        pair = split_half(ds, seed=seed)
        combined = np.concatenate([pair.train.features, pair.test.features])
        key = np.lexsort(combined.T)
        src_key = np.lexsort(ds.features.T)
        np.testing.assert_array_equal(combined[key], ds.features[src_key])
        labels = np.concatenate([pair.train.labels, pair.test.labels])
        assert sorted(labels) == sorted(ds.labels)


class TestLoadCsv:
    def write(self, tmp_path, text, name="data.csv"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    def test_happy_path(self, tmp_path):
        path = self.write(tmp_path, "t,a,b\n1,0.5,2\n0,1.5,3\n")
        ds = load_csv(path, target_column="t", positive_value="1")
        assert ds.n_rows == 2
        np.testing.assert_array_equal(ds.labels, [1.0, -1.0])
        np.testing.assert_array_equal(ds.features, [[0.5, 2.0], [1.5, 3.0]])
        assert ds.feature_names == ("a", "b")

    def test_missing_target_column(self, tmp_path):
        path = self.write(tmp_path, "t,a\n1,2\n")
        with pytest.raises(ValueError, match="'missing'"):
            load_csv(path, target_column="missing", positive_value="1")

    def test_non_numeric_cell_names_row_and_column(self, tmp_path):
        path = self.write(tmp_path, "t,a,b\n1,0.5,2\n0,oops,3\n")
        with pytest.raises(ValueError, match=r"row 3.*'a'"):
            load_csv(path, target_column="t", positive_value="1")

    def test_non_finite_cell_rejected(self, tmp_path):
        path = self.write(tmp_path, "t,a\n1,inf\n")
        with pytest.raises(ValueError, match="row 2"):
            load_csv(path, target_column="t", positive_value="1")

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_csv(tmp_path / "nope.csv", target_column="t", positive_value="1")

    def test_empty_body(self, tmp_path):
        path = self.write(tmp_path, "t,a\n")
        with pytest.raises(ValueError, match="no data rows"):
            load_csv(path, target_column="t", positive_value="1")

    def test_round_trip_through_select_features(self, tmp_path):
        path = self.write(tmp_path, "y,a,b,c\n1,1.25,-2,0.0078125\n0,3,4,5\n")
        ds = load_csv(path, target_column="y", positive_value="1")
        again = select_features(ds, [0, 1, 2])
        np.testing.assert_array_equal(again.features, ds.features)
        np.testing.assert_array_equal(again.labels, ds.labels)
        assert again.feature_names == ds.feature_names


class TestSelectFeatures:
    def test_identity(self):
        ds = small_dataset(n=3)
        out = select_features(ds, [0, 1, 2])
        np.testing.assert_array_equal(out.features, ds.features)

    def test_single_column(self):
        ds = small_dataset(n=3)
        out = select_features(ds, [1])
        assert out.n_features == 1
        np.testing.assert_array_equal(out.features[:, 0], ds.features[:, 1])
        np.testing.assert_array_equal(out.labels, ds.labels)

    def test_permutation(self):
        ds = small_dataset(n=3)
        out = select_features(ds, [2, 0])
        np.testing.assert_array_equal(out.features[:, 0], ds.features[:, 2])
        np.testing.assert_array_equal(out.features[:, 1], ds.features[:, 0])

    def test_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            select_features(small_dataset(n=3), [3])

    def test_duplicate(self):
        with pytest.raises(ValueError, match="duplicate"):
            select_features(small_dataset(n=3), [0, 0])
