"""Datasets: synthetic two-cluster generation, CSV ingestion, splitting.

A :class:`Dataset` is an immutable feature matrix with labels in {-1, +1}.
Synthetic data comes from two isotropic unit-variance Gaussian clusters
whose means sit at ``+/- class_sep * (1,...,1)/sqrt(n_features)`` (so the
means are ``2 * class_sep`` apart in Euclidean norm), with independent
label flipping at rate ``flip_y``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .rng import make_rng


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Dataset:
    """Feature matrix (m rows x n columns) with labels in {-1, +1}.

    Rows are immutable after construction; invalid labels, non-finite
    features, or mismatched lengths are rejected here so downstream code
    can rely on them.
    """

    features: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        features = _freeze(np.atleast_2d(self.features))
        labels = _freeze(np.asarray(self.labels).ravel())
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        if features.ndim != 2:
            raise ValueError("features must be a 2-D matrix")
        if labels.shape[0] != features.shape[0]:
            raise ValueError(
                f"labels length {labels.shape[0]} != row count {features.shape[0]}"
            )
        if not np.all(np.isfinite(features)):
            raise ValueError("features contain NaN or infinite entries")
        if not np.all(np.abs(labels) == 1.0):
            raise ValueError("every label must be exactly -1 or +1")
        if self.feature_names is not None:
            names = tuple(self.feature_names)
            object.__setattr__(self, "feature_names", names)
            if len(names) != features.shape[1]:
                raise ValueError(
                    f"feature_names length {len(names)} != column count {features.shape[1]}"
                )

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]


@dataclass(frozen=True)
class SyntheticConfig:
    """Parameters of the two-cluster generator.

    Defaults mirror the generator settings used by the bound-verification
    experiments: ``class_sep=0.5`` and ``flip_y=0.05``.
    """

    n_features: int
    m_total: int
    class_sep: float = 0.5
    flip_y: float = 0.05
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_features < 1:
            raise ValueError("n_features must be a positive integer")
        if self.m_total < 2:
            raise ValueError("m_total must be at least 2")
        if self.class_sep < 0:
            raise ValueError("class_sep must be nonnegative")
        if not 0.0 <= self.flip_y <= 1.0:
            raise ValueError("flip_y must lie in [0, 1]")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")


@dataclass(frozen=True)
class SplitPair:
    """Disjoint train/test halves of a source dataset."""

    train: Dataset
    test: Dataset


def generate_synthetic(config: SyntheticConfig) -> Dataset:
    """Draw a two-cluster binary classification dataset.

    ceil(m/2) rows come from the +1 cluster and floor(m/2) from the -1
    cluster (in that row order), then each label independently flips sign
    with probability ``flip_y``. Deterministic given ``config.seed``: the
    +1 block is drawn first, then the -1 block, then the flip mask.
    """
    rng = make_rng(config.seed)
    n = config.n_features
    n_pos = (config.m_total + 1) // 2
    n_neg = config.m_total // 2
    offset = config.class_sep / math.sqrt(n)

    pos = rng.standard_normal((n_pos, n)) + offset
    neg = rng.standard_normal((n_neg, n)) - offset
    features = np.concatenate([pos, neg], axis=0)
    labels = np.concatenate([np.ones(n_pos), -np.ones(n_neg)])

    flips = rng.uniform(size=config.m_total) < config.flip_y
    labels = np.where(flips, -labels, labels)
    return Dataset(features=features, labels=labels)


def split_half(dataset: Dataset, seed: int) -> SplitPair:
    """Shuffle rows by a seeded permutation and cut into two halves.

    For odd sizes the extra row goes to train. The union of the two halves
    is exactly the source rows for every seed.
    """
    m = dataset.n_rows
    if m < 2:
        raise ValueError("split_half needs a dataset with at least 2 rows")
    perm = make_rng(seed).permutation(m)
    cut = (m + 1) // 2
    train_idx, test_idx = perm[:cut], perm[cut:]
    return SplitPair(
        train=Dataset(
            features=dataset.features[train_idx],
            labels=dataset.labels[train_idx],
            feature_names=dataset.feature_names,
        ),
        test=Dataset(
            features=dataset.features[test_idx],
            labels=dataset.labels[test_idx],
            feature_names=dataset.feature_names,
        ),
    )


def load_csv(path: str | Path, target_column: str, positive_value: str) -> Dataset:
    """Read a headered CSV into a Dataset.

    Target cells equal to ``positive_value`` map to +1, everything else to
    -1. All other columns must parse as finite decimal reals and become
    features in header order. Rows are reported 1-based counting the
    header as row 1.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such file: {path}")
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ValueError(f"{path}: file is empty, expected a header row") from None
        if target_column not in header:
            raise ValueError(
                f"{path}: target column {target_column!r} not in header {header}"
            )
        target_idx = header.index(target_column)
        feature_names = tuple(h for i, h in enumerate(header) if i != target_idx)

        rows: list[list[float]] = []
        labels: list[float] = []
        for line_no, cells in enumerate(reader, start=2):
            if not cells or (len(cells) == 1 and cells[0].strip() == ""):
                continue
            if len(cells) != len(header):
                raise ValueError(
                    f"{path}: row {line_no} has {len(cells)} cells, expected {len(header)}"
                )
            row: list[float] = []
            for i, cell in enumerate(cells):
                if i == target_idx:
                    continue
                text = cell.strip()
                try:
                    value = float(text)
                except ValueError:
                    value = math.nan
                if not math.isfinite(value):
                    raise ValueError(
                        f"{path}: row {line_no}, column {header[i]!r}: "
                        f"cannot parse {cell!r} as a finite real"
                    )
                row.append(value)
            labels.append(1.0 if cells[target_idx].strip() == positive_value else -1.0)
            rows.append(row)

    if not rows:
        raise ValueError(f"{path}: no data rows after the header")
    return Dataset(
        features=np.array(rows, dtype=np.float64),
        labels=np.array(labels, dtype=np.float64),
        feature_names=feature_names,
    )


def select_features(dataset: Dataset, column_indices: Sequence[int]) -> Dataset:
    """Keep only the given columns, in the given order; labels unchanged."""
    indices = [int(i) for i in column_indices]
    n = dataset.n_features
    for i in indices:
        if not 0 <= i < n:
            raise ValueError(f"column index {i} out of range for {n} features")
    if len(set(indices)) != len(indices):
        raise ValueError(f"duplicate column indices in {indices}")
    names = None
    if dataset.feature_names is not None:
        names = tuple(dataset.feature_names[i] for i in indices)
    return Dataset(
        features=dataset.features[:, indices],
        labels=dataset.labels,
        feature_names=names,
    )
