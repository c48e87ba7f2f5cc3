"""AdaBoost over perceptron weak learners.

Each round fits a perceptron against the current sample distribution,
computes its weighted error eps, the vote weight alpha = 0.5*ln((1-eps)/eps)
and normalizer z = 2*sqrt(eps*(1-eps)), then reweights the sample. Rounds
worse than chance are negated (``flipped``) so eps <= 1/2 and alpha >= 0
always; eps is clamped to a configurable floor so alpha stays finite on
separable data. The new distribution is normalized by its empirical sum
rather than the closed-form z, which keeps it a probability vector even on
clamped rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .data import Dataset
from .perceptron import (
    Distribution,
    PerceptronConfig,
    PerceptronModel,
    fit_perceptron,
    predict_many,
    weighted_error,
)
from .rng import derive_seed

DEFAULT_EPSILON_FLOOR = 1e-10


@dataclass(frozen=True)
class BoostRound:
    """One boosting round: hypothesis, its vote weight and error bookkeeping."""

    hypothesis: PerceptronModel
    alpha: float
    epsilon: float
    z: float
    flipped: bool

    def __post_init__(self) -> None:
        if not 0.0 < self.epsilon <= 0.5:
            raise ValueError(f"round epsilon {self.epsilon!r} outside (0, 0.5]")
        if self.alpha < 0.0:
            raise ValueError("round alpha must be nonnegative")
        if not 0.0 < self.z <= 1.0:
            raise ValueError(f"round z {self.z!r} outside (0, 1]")


@dataclass(frozen=True)
class Ensemble:
    """Weighted vote over the rounds' hypotheses (flips already encoded)."""

    rounds: tuple[BoostRound, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rounds", tuple(self.rounds))
        if len(self.rounds) < 1:
            raise ValueError("ensemble needs at least one round")

    @property
    def alpha_total(self) -> float:
        return float(sum(abs(r.alpha) for r in self.rounds))


@dataclass(frozen=True)
class TrainTrace:
    """Full training record: D_1..D_{T+1} plus the final ensemble."""

    distributions: tuple[Distribution, ...]
    ensemble: Ensemble

    def __post_init__(self) -> None:
        object.__setattr__(self, "distributions", tuple(self.distributions))
        if len(self.distributions) != len(self.ensemble.rounds) + 1:
            raise ValueError("expected one distribution per round plus the initial one")


def compute_alpha(epsilon: float) -> float:
    """Vote weight 0.5*ln((1-eps)/eps); positive iff eps < 1/2."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon {epsilon!r} outside (0, 1)")
    return 0.5 * math.log((1.0 - epsilon) / epsilon)


def compute_z(epsilon: float) -> float:
    """Normalizer 2*sqrt(eps*(1-eps)); equals 1 iff eps = 1/2."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon {epsilon!r} outside (0, 1)")
    return 2.0 * math.sqrt(epsilon * (1.0 - epsilon))


def update_distribution(
    dist: Distribution,
    alpha: float,
    predictions: np.ndarray,
    labels: np.ndarray,
) -> Distribution:
    """Reweight rows by exp(-alpha * y_i * h(x_i)) and renormalize."""
    predictions = np.asarray(predictions, dtype=np.float64).ravel()
    labels = np.asarray(labels, dtype=np.float64).ravel()
    p = dist.probabilities
    if not (p.shape == predictions.shape == labels.shape):
        raise ValueError("distribution, predictions and labels must share length")
    unnormalized = p * np.exp(-alpha * labels * predictions)
    total = float(np.sum(unnormalized))
    assert total > 0.0, "unnormalized mass vanished; alpha must be finite"
    return Distribution(unnormalized / total)


def train_adaboost(
    train: Dataset,
    n_rounds: int,
    weak_config: PerceptronConfig,
    epsilon_floor: float = DEFAULT_EPSILON_FLOOR,
) -> TrainTrace:
    """Run the boosting loop for ``n_rounds`` rounds.

    Round t fits its perceptron with a seed derived from
    (weak_config.seed, t), so a longer run is an exact extension of a
    shorter one. A round whose raw weighted error exceeds 1/2 has its
    hypothesis negated and its error replaced by 1 - eps; the error is
    then clamped into [epsilon_floor, 1/2] before alpha and z.
    """
    if train.n_rows < 1:
        raise ValueError("training dataset is empty")
    if n_rounds < 1:
        raise ValueError("n_rounds must be at least 1")
    if not 0.0 < epsilon_floor < 0.5:
        raise ValueError("epsilon_floor must lie in (0, 0.5)")

    dist = Distribution.uniform(train.n_rows)
    distributions = [dist]
    rounds: list[BoostRound] = []
    for t in range(n_rounds):
        round_config = replace(weak_config, seed=derive_seed(weak_config.seed, t))
        model = fit_perceptron(train, dist, round_config)
        raw_epsilon = weighted_error(model, train, dist)
        predictions = predict_many(model, train.features)
        flipped = raw_epsilon > 0.5
        if flipped:
            predictions = -predictions
            raw_epsilon = 1.0 - raw_epsilon
        epsilon = min(max(raw_epsilon, epsilon_floor), 0.5)
        alpha = compute_alpha(epsilon)
        z = compute_z(epsilon)
        dist = update_distribution(dist, alpha, predictions, train.labels)
        distributions.append(dist)
        rounds.append(
            BoostRound(hypothesis=model, alpha=alpha, epsilon=epsilon, z=z, flipped=flipped)
        )
    return TrainTrace(distributions=tuple(distributions), ensemble=Ensemble(tuple(rounds)))


def round_predictions(round_: BoostRound, features: np.ndarray) -> np.ndarray:
    """The round's +/-1 votes on a feature matrix, flip applied."""
    h = predict_many(round_.hypothesis, features)
    return -h if round_.flipped else h


def ensemble_scores(ens: Ensemble, features: np.ndarray) -> np.ndarray:
    """Vector of sum_t alpha_t * h_t(x_i), accumulated in round order."""
    scores = np.zeros(features.shape[0])
    for r in ens.rounds:
        scores += r.alpha * round_predictions(r, features)
    return scores


def ensemble_score(ens: Ensemble, x: np.ndarray) -> float:
    """sum_t alpha_t * h_t(x) for a single point."""
    x = np.asarray(x, dtype=np.float64).ravel()
    return float(ensemble_scores(ens, x.reshape(1, -1))[0])


def ensemble_predict(ens: Ensemble, x: np.ndarray) -> int:
    """Sign of the ensemble score, with sign(0) = +1."""
    return 1 if ensemble_score(ens, x) >= 0.0 else -1


def misclassification_rate(ens: Ensemble, data: Dataset) -> float:
    """Fraction of rows where the ensemble vote disagrees with the label."""
    if data.n_rows < 1:
        raise ValueError("dataset is empty")
    preds = np.where(ensemble_scores(ens, data.features) >= 0.0, 1.0, -1.0)
    return float(np.count_nonzero(preds != data.labels)) / data.n_rows


def l1_margin(ens: Ensemble, data: Dataset) -> float | None:
    """Minimum of |score(x_i)| / sum_t |alpha_t| over the rows.

    Lies in [0, 1] since every hypothesis outputs +/-1. Returns None when
    all alphas are zero (the margin is undefined; the bound treats it as
    an infinite ceiling).
    """
    if data.n_rows < 1:
        raise ValueError("dataset is empty")
    total = ens.alpha_total
    if total == 0.0:
        return None
    scores = ensemble_scores(ens, data.features)
    return float(np.min(np.abs(scores))) / total


def staged_misclassification_rates(trace: TrainTrace, data: Dataset) -> np.ndarray:
    """Misclassification rate of every prefix ensemble, rounds 1..T.

    Equivalent to retraining with smaller round counts, which holds
    exactly because round t's seed depends only on (seed, t).
    """
    if data.n_rows < 1:
        raise ValueError("dataset is empty")
    rounds = trace.ensemble.rounds
    votes = np.stack([r.alpha * round_predictions(r, data.features) for r in rounds])
    scores = np.cumsum(votes, axis=0)
    preds = np.where(scores >= 0.0, 1.0, -1.0)
    return np.count_nonzero(preds != data.labels, axis=1) / data.n_rows
