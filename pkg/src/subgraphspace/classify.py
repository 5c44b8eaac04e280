"""Binary classification of graph provenance from subgraph frequencies,
backbone residuals, and global structural features, with the stratified
cross-validation protocol used throughout.

Feature specs mirror the feature-table rows: any "+"-combination of
edges, triads, quads, rg (residual against the Erdos-Renyi curve),
rlambda (residual against the fitted triadic backbone), and global.
Residual features use 4-node frequencies when quads are present, else
3-node. The backbone rate for rlambda is fit to the pooled unlabeled
training split of each fold, never to test data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.special import expit

from .census import (
    DEFAULT_SAMPLES,
    FrequencyVector,
    exact_census,
    sampled_census,
)
from .errors import SizeLimitError
from .features import global_features
from .graphs import Graph, edge_density
from .walk import backbone_curve, fit_lambda

__all__ = [
    "FeatureSpec",
    "GraphRecord",
    "LabeledDataset",
    "LogisticModel",
    "CVResult",
    "graph_record",
    "assemble_features",
    "logistic_objective",
    "train_logistic",
    "cross_validate",
]

_COMPONENTS = ("edges", "triads", "quads", "rg", "rlambda", "global")
_ALIASES = {
    "edge": "edges",
    "r_g": "rg",
    "r_lambda": "rlambda",
    "rlam": "rlambda",
    "triad": "triads",
    "quad": "quads",
}


@dataclass(frozen=True)
class FeatureSpec:
    """Which feature blocks to concatenate, in the fixed order
    edges, triads, quads, rg, rlambda, global."""

    components: frozenset[str]

    def __post_init__(self):
        bad = self.components - set(_COMPONENTS)
        if bad:
            raise ValueError(f"unknown feature components: {sorted(bad)}")
        if not self.components:
            raise ValueError("feature spec is empty")

    @classmethod
    def parse(cls, text: str) -> "FeatureSpec":
        parts = [t.strip().lower() for t in text.split("+") if t.strip()]
        return cls(frozenset(_ALIASES.get(t, t) for t in parts))

    @property
    def residual_k(self) -> int:
        """Residual dimension follows the largest census present."""
        return 4 if "quads" in self.components else 3

    @property
    def name(self) -> str:
        return "+".join(c for c in _COMPONENTS if c in self.components)

    def __contains__(self, item: str) -> bool:
        return item in self.components


@dataclass(frozen=True)
class GraphRecord:
    """Per-graph raw material for feature assembly, computed once."""

    density: float
    census3: FrequencyVector | None = None
    census4: FrequencyVector | None = None
    global_vec: np.ndarray | None = None


@dataclass(frozen=True)
class LabeledDataset:
    """Feature matrix with binary labels and optional fold assignment."""

    features: np.ndarray
    labels: np.ndarray
    folds: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.features) != len(self.labels):
            raise ValueError("features and labels differ in length")
        if set(np.unique(self.labels)) - {0, 1}:
            raise ValueError("labels must be 0/1")


def _census_or_sampled(g: Graph, k: int, seed) -> FrequencyVector:
    try:
        return exact_census(g, k)
    except SizeLimitError:
        return sampled_census(g, k, DEFAULT_SAMPLES, seed)


def graph_record(
    g: Graph,
    spec: FeatureSpec,
    seed: int | np.random.SeedSequence | None = None,
) -> GraphRecord:
    """Compute the raw inputs a feature spec needs for one graph. Censuses
    fall back to 11,000-draw sampling past the enumeration guard."""
    residuals = "rg" in spec or "rlambda" in spec
    need3 = "triads" in spec or (residuals and spec.residual_k == 3)
    need4 = "quads" in spec or (residuals and spec.residual_k == 4)
    return GraphRecord(
        density=edge_density(g),
        census3=_census_or_sampled(g, 3, seed) if need3 else None,
        census4=_census_or_sampled(g, 4, seed) if need4 else None,
        global_vec=global_features(g).as_vector() if "global" in spec else None,
    )


def _assemble_matrix(
    records: Sequence[GraphRecord], spec: FeatureSpec, lam: float | None
) -> np.ndarray:
    """Feature matrix for a batch of records; residual baselines are
    computed with one batched stationary solve per block."""
    n = len(records)
    blocks: list[np.ndarray] = []
    if "edges" in spec:
        blocks.append(np.array([[r.density] for r in records]))
    if "triads" in spec:
        blocks.append(np.vstack([r.census3.values for r in records]))
    if "quads" in spec:
        blocks.append(np.vstack([r.census4.values for r in records]))
    if "rg" in spec or "rlambda" in spec:
        k = spec.residual_k
        census = np.vstack(
            [(r.census4 if k == 4 else r.census3).values for r in records]
        )
        densities = np.array([r.density for r in records])
        if "rg" in spec:
            blocks.append(census - backbone_curve(k, densities, 0.0, clamp=True))
        if "rlambda" in spec:
            if lam is None:
                raise ValueError("rlambda features need a fitted backbone rate")
            blocks.append(census - backbone_curve(k, densities, lam, clamp=True))
    if "global" in spec:
        blocks.append(np.vstack([r.global_vec for r in records]))
    return np.hstack(blocks) if n else np.empty((0, 0))


def assemble_features(
    g: Graph,
    spec: FeatureSpec,
    backbone_lam: float | None = None,
    seed: int | np.random.SeedSequence | None = None,
) -> np.ndarray:
    """Feature vector for a single graph (record computed on the fly)."""
    record = graph_record(g, spec, seed)
    return _assemble_matrix([record], spec, backbone_lam)[0]


@dataclass(frozen=True)
class LogisticModel:
    """L2-regularized logistic regression on standardized features."""

    weights: np.ndarray  # without intercept, standardized space
    intercept: float
    mean: np.ndarray
    scale: np.ndarray

    def decision(self, x: np.ndarray) -> np.ndarray:
        z = (np.atleast_2d(x) - self.mean) / self.scale
        return z @ self.weights + self.intercept

    def predict(self, x: np.ndarray) -> np.ndarray:
        return (self.decision(x) >= 0.0).astype(int)

    def accuracy(self, x: np.ndarray, y: np.ndarray) -> float:
        return float((self.predict(x) == np.asarray(y)).mean())


def logistic_objective(
    w: np.ndarray, x: np.ndarray, y: np.ndarray, regularization: float
) -> tuple[float, np.ndarray]:
    """Summed log-likelihood minus L2 penalty, and its gradient.

    ``w`` packs [intercept, weights]; the intercept is not penalized.
    The analytic gradient here is what the finite-difference tests check.
    """
    xb = np.hstack([np.ones((len(x), 1)), x])
    z = xb @ w
    # stable log sigmoid: log(1+e^-z) via logaddexp
    loglik = float(np.sum(y * z - np.logaddexp(0.0, z)))
    penalty = 0.5 * regularization * float(w[1:] @ w[1:])
    sigma = expit(z)
    grad = xb.T @ (np.asarray(y) - sigma)
    grad[1:] -= regularization * w[1:]
    return loglik - penalty, grad


def train_logistic(
    train: LabeledDataset,
    regularization: float = 1.0,
    grad_tol: float = 1e-6,
    max_iter: int = 10_000,
) -> LogisticModel:
    """Maximize the regularized log-likelihood by gradient ascent with
    backtracking steps, on train-standardized features."""
    x = np.asarray(train.features, dtype=float)
    y = np.asarray(train.labels, dtype=float)
    if len(np.unique(y)) < 2:
        raise ValueError("training data must contain both classes")
    if np.bincount(y.astype(int), minlength=2).min() < 1:
        raise ValueError("each class needs at least one instance")
    mean = x.mean(axis=0)
    scale = x.std(axis=0)
    scale[scale == 0.0] = 1.0
    z = (x - mean) / scale

    w = np.zeros(z.shape[1] + 1)
    step = 1.0
    value, grad = logistic_objective(w, z, y, regularization)
    for _ in range(max_iter):
        gnorm = float(np.linalg.norm(grad))
        if gnorm <= grad_tol:
            break
        improved = False
        while step > 1e-12:
            trial = w + step * grad
            tv, tg = logistic_objective(trial, z, y, regularization)
            if tv > value:
                improved = True
                break
            step *= 0.5
        if not improved:
            break  # at numerical stagnation; gradient is already tiny
        w, value, grad = trial, tv, tg
        step = min(step * 1.3, 100.0)
    return LogisticModel(
        weights=w[1:], intercept=float(w[0]), mean=mean, scale=scale
    )


@dataclass(frozen=True)
class CVResult:
    spec: FeatureSpec
    fold_accuracies: tuple[float, ...]
    lambdas: tuple[float, ...]

    @property
    def mean_accuracy(self) -> float:
        return float(np.mean(self.fold_accuracies))

    @property
    def std_error(self) -> float:
        a = np.array(self.fold_accuracies)
        return float(a.std(ddof=1) / np.sqrt(len(a))) if len(a) > 1 else 0.0


def stratified_folds(
    labels: np.ndarray, folds: int, seed: int | np.random.SeedSequence | None
) -> np.ndarray:
    """Fold assignment preserving class balance within one instance."""
    rng = np.random.default_rng(seed)
    labels = np.asarray(labels)
    out = np.empty(len(labels), dtype=int)
    for cls in np.unique(labels):
        idx = np.flatnonzero(labels == cls)
        rng.shuffle(idx)
        out[idx] = np.arange(len(idx)) % folds
    return out


def cross_validate(
    records: Sequence[GraphRecord],
    labels: Sequence[int],
    spec: FeatureSpec,
    folds: int = 5,
    seed: int | np.random.SeedSequence | None = 0,
    regularization: float = 1.0,
    fit_lambda_kwargs: dict | None = None,
) -> CVResult:
    """Stratified k-fold accuracy for one feature spec.

    Standardization and (for rlambda) the backbone-rate fit use only each
    fold's training split; the rate is fit to the pooled unlabeled
    training censuses.
    """
    if folds < 2:
        raise ValueError(f"need at least 2 folds, got {folds}")
    y = np.asarray(labels, dtype=int)
    assignment = stratified_folds(y, folds, seed)
    accuracies = []
    lams = []
    fit_kw = fit_lambda_kwargs or {}
    for f in range(folds):
        test_mask = assignment == f
        train_idx = np.flatnonzero(~test_mask)
        test_idx = np.flatnonzero(test_mask)
        train_records = [records[i] for i in train_idx]
        test_records = [records[i] for i in test_idx]
        lam = None
        if "rlambda" in spec:
            k = spec.residual_k
            # the backbone is only defined strictly inside (0, 1); empty or
            # complete graphs still get residual features, just no vote here
            fittable = [r for r in train_records if 0.0 < r.density < 1.0]
            if len(fittable) < 2:
                lam = 0.0
            else:
                census = np.vstack(
                    [
                        (r.census4 if k == 4 else r.census3).values
                        for r in fittable
                    ]
                )
                dens = [r.density for r in fittable]
                lam = fit_lambda(census, dens, k, **fit_kw)
        x_train = _assemble_matrix(train_records, spec, lam)
        x_test = _assemble_matrix(test_records, spec, lam)
        model = train_logistic(
            LabeledDataset(x_train, y[train_idx]), regularization
        )
        accuracies.append(model.accuracy(x_test, y[test_idx]))
        lams.append(lam if lam is not None else float("nan"))
    return CVResult(
        spec=spec,
        fold_accuracies=tuple(accuracies),
        lambdas=tuple(lams),
    )
