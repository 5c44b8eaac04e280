import numpy as np
import pytest

from subgraphspace.classify import (
    FeatureSpec,
    GraphRecord,
    LabeledDataset,
    assemble_features,
    cross_validate,
    graph_record,
    logistic_objective,
    stratified_folds,
    train_logistic,
)
from subgraphspace.census import exact_census
from subgraphspace.features import global_features
from subgraphspace.graphs import complete_bipartite, edge_density

from conftest import random_graph


def test_feature_spec_parsing():
    spec = FeatureSpec.parse("Global+Quads+R_lambda")
    assert spec.components == frozenset({"global", "quads", "rlambda"})
    assert spec.residual_k == 4
    assert FeatureSpec.parse("triads+rg").residual_k == 3
    with pytest.raises(ValueError):
        FeatureSpec.parse("edges+nonsense")
    with pytest.raises(ValueError):
        FeatureSpec.parse("")


def test_feature_dimensions():
    kb = complete_bipartite(5, 5)
    assert assemble_features(kb, FeatureSpec.parse("edges")).shape == (1,)
    assert assemble_features(kb, FeatureSpec.parse("triads+rg")).shape == (8,)
    vec = assemble_features(
        kb, FeatureSpec.parse("global+quads+rlambda"), backbone_lam=1.0
    )
    assert vec.shape == (16 + 11 + 11,)


def test_edges_feature_value():
    kb = complete_bipartite(5, 5)
    vec = assemble_features(kb, FeatureSpec.parse("edges"))
    assert vec[0] == pytest.approx(25 / 45)


def test_rlambda_requires_rate():
    kb = complete_bipartite(5, 5)
    with pytest.raises(ValueError):
        assemble_features(kb, FeatureSpec.parse("quads+rlambda"))


def test_gradient_matches_finite_differences(rng):
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(4, 40))
        d = int(rng.integers(1, 7))
        x = rng.normal(size=(n, d))
        y = rng.integers(0, 2, n).astype(float)
        w = rng.normal(size=d + 1)
        reg = float(rng.uniform(0.0, 2.0))
        _, grad = logistic_objective(w, x, y, reg)
        eps = 1e-6
        numeric = np.zeros_like(w)
        for i in range(len(w)):
            up, down = w.copy(), w.copy()
            up[i] += eps
            down[i] -= eps
            numeric[i] = (
                logistic_objective(up, x, y, reg)[0]
                - logistic_objective(down, x, y, reg)[0]
            ) / (2 * eps)
        scale = max(np.abs(numeric).max(), 1e-12)
        worst = max(worst, float(np.abs(grad - numeric).max() / scale))
    assert worst <= 1e-5


def test_separable_two_points():
    data = LabeledDataset(np.array([[0.0], [1.0]]), np.array([0, 1]))
    model = train_logistic(data)
    assert model.accuracy(data.features, data.labels) == 1.0


def test_single_class_rejected():
    with pytest.raises(ValueError):
        train_logistic(LabeledDataset(np.zeros((3, 2)), np.array([1, 1, 1])))


def test_null_task_near_chance(rng):
    x = rng.normal(size=(2000, 4))
    y = rng.integers(0, 2, 2000)
    assignment = stratified_folds(y, 5, seed=3)
    accs = []
    for f in range(5):
        train = assignment != f
        model = train_logistic(LabeledDataset(x[train], y[train]))
        accs.append(model.accuracy(x[~train], y[~train]))
    assert 0.45 <= float(np.mean(accs)) <= 0.55


def test_perfect_feature_classifies():
    rng = np.random.default_rng(0)
    y = rng.integers(0, 2, 300)
    x = np.hstack([y[:, None] * 2.0 - 1.0, rng.normal(size=(300, 3))])
    assignment = stratified_folds(y, 5, seed=1)
    for f in range(5):
        train = assignment != f
        model = train_logistic(LabeledDataset(x[train], y[train]))
        assert model.accuracy(x[~train], y[~train]) == 1.0


def test_stratified_fold_balance(rng):
    y = np.array([0] * 53 + [1] * 47)
    assignment = stratified_folds(y, 5, seed=7)
    for f in range(5):
        counts = np.bincount(y[assignment == f], minlength=2)
        assert abs(counts[0] - 53 / 5) <= 1
        assert abs(counts[1] - 47 / 5) <= 1


def test_cross_validate_deterministic(rng):
    records = []
    labels = []
    for i in range(40):
        g = random_graph(rng, 12, 0.3 if i % 2 else 0.7)
        records.append(
            GraphRecord(
                density=edge_density(g), census3=exact_census(g, 3)
            )
        )
        labels.append(i % 2)
    spec = FeatureSpec.parse("triads")
    a = cross_validate(records, labels, spec, folds=4, seed=11)
    b = cross_validate(records, labels, spec, folds=4, seed=11)
    assert a.fold_accuracies == b.fold_accuracies
    assert a.mean_accuracy > 0.9  # density gap makes this task easy
    with pytest.raises(ValueError):
        cross_validate(records, labels, spec, folds=1)


def test_graph_record_contents():
    kb = complete_bipartite(4, 4)
    spec = FeatureSpec.parse("global+triads+rg")
    rec = graph_record(kb, spec)
    assert rec.census3 is not None
    assert rec.census4 is None
    assert rec.global_vec is not None and len(rec.global_vec) == 16
    assert global_features(kb).as_vector().tolist() == rec.global_vec.tolist()
