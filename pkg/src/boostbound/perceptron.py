"""Weighted perceptron weak learner.

Training runs a fixed number of epochs over seeded shuffles of the rows;
a misclassified row i moves the parameters by ``m * D(i) * y_i`` times the
row (and 1 for the bias), so under the uniform distribution the update is
the classic unit-step perceptron. sign(0) is +1 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .rng import make_rng


@dataclass(frozen=True)
class PerceptronModel:
    """Linear threshold unit: predicts sign(weights . x + bias)."""

    weights: np.ndarray
    bias: float

    def __post_init__(self) -> None:
        w = np.ascontiguousarray(self.weights, dtype=np.float64).ravel()
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "bias", float(self.bias))
        if not (np.all(np.isfinite(w)) and np.isfinite(self.bias)):
            raise ValueError("model parameters must be finite")


@dataclass(frozen=True)
class Distribution:
    """Probability weights over training rows: nonnegative, summing to 1."""

    probabilities: np.ndarray

    def __post_init__(self) -> None:
        p = np.ascontiguousarray(self.probabilities, dtype=np.float64).ravel()
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)
        if p.size == 0:
            raise ValueError("distribution must be nonempty")
        if np.any(p < 0.0):
            raise ValueError("distribution entries must be nonnegative")
        total = float(np.sum(p))
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"distribution sums to {total!r}, expected 1 within 1e-9")

    @classmethod
    def uniform(cls, m: int) -> "Distribution":
        if m < 1:
            raise ValueError("m must be positive")
        return cls(np.full(m, 1.0 / m))


@dataclass(frozen=True)
class PerceptronConfig:
    epochs: int = 10
    seed: int = 0

    def __post_init__(self) -> None:
        if self.epochs < 1:
            raise ValueError("epochs must be at least 1")


def fit_perceptron(
    train: Dataset, dist: Distribution, config: PerceptronConfig
) -> PerceptronModel:
    """Train a perceptron under a sample-weight distribution.

    Weights and bias start at zero. Each epoch visits the rows in a fresh
    seeded shuffle; rows with zero weight produce zero-magnitude updates
    and therefore never change the model.
    """
    X, y = train.features, train.labels
    m, n = X.shape
    if dist.probabilities.shape[0] != m:
        raise ValueError(
            f"distribution length {dist.probabilities.shape[0]} != row count {m}"
        )
    rng = make_rng(config.seed)
    step = m * dist.probabilities * y
    w = np.zeros(n)
    b = 0.0
    for _ in range(config.epochs):
        for i in rng.permutation(m):
            xi = X[i]
            score = xi @ w + b
            pred = 1.0 if score >= 0.0 else -1.0
            if pred != y[i]:
                w += step[i] * xi
                b += step[i]
    return PerceptronModel(weights=w, bias=b)


def predict(model: PerceptronModel, x: np.ndarray) -> int:
    """Classify one point: sign(weights . x + bias) with sign(0) = +1."""
    x = np.asarray(x, dtype=np.float64).ravel()
    if x.shape[0] != model.weights.shape[0]:
        raise ValueError(
            f"input dimension {x.shape[0]} != model dimension {model.weights.shape[0]}"
        )
    score = float(x @ model.weights) + model.bias
    return 1 if score >= 0.0 else -1


def predict_many(model: PerceptronModel, features: np.ndarray) -> np.ndarray:
    """Vectorized predict over a feature matrix; returns a float vector of +/-1."""
    if features.shape[1] != model.weights.shape[0]:
        raise ValueError(
            f"input dimension {features.shape[1]} != model dimension "
            f"{model.weights.shape[0]}"
        )
    scores = features @ model.weights + model.bias
    return np.where(scores >= 0.0, 1.0, -1.0)


def weighted_error(model: PerceptronModel, data: Dataset, dist: Distribution) -> float:
    """Probability of misclassification under the distribution."""
    if dist.probabilities.shape[0] != data.n_rows:
        raise ValueError(
            f"distribution length {dist.probabilities.shape[0]} != row count {data.n_rows}"
        )
    mistakes = predict_many(model, data.features) != data.labels
    return float(np.sum(dist.probabilities[mistakes]))
