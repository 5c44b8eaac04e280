import numpy as np
import pytest

from subgraphspace.catalog import build_catalog
from subgraphspace.census import FrequencyVector, gnp_frequency_curve
from subgraphspace.errors import NumericalError
from subgraphspace.walk import (
    RateModel,
    backbone_curve,
    backbone_residual,
    build_generator,
    fit_lambda,
    lambda_objective,
    nu_for_density,
    stationary_distribution,
)
from subgraphspace.census import exact_census
from subgraphspace.graphs import complete_bipartite


def test_rate_model_validation():
    with pytest.raises(ValueError):
        RateModel(3, 0.0, 1.0)
    with pytest.raises(ValueError):
        RateModel(3, 1.0, -0.5)


def test_generator_k3_rates():
    cat = build_catalog(3)
    q = build_generator(cat, RateModel(3, 1.0, 0.0)).rates
    assert q[1, 0] == 3.0  # empty -> one-edge
    assert q[3, 2] == 1.0  # path -> triangle
    assert q[2, 3] == 3.0  # triangle -> path (three deletable edges)
    assert np.abs(q.sum(axis=0)).max() == 0.0
    q2 = build_generator(cat, RateModel(3, 1.0, 2.0)).rates
    assert q2[3, 2] == 3.0  # one slot at rate nu + 1*lam


def test_generator_column_sums_k45():
    for k in (4, 5):
        cat = build_catalog(k)
        q = build_generator(cat, RateModel(k, 0.7, 1.3)).rates
        assert np.abs(q.sum(axis=0)).max() <= 1e-12
        off = q - np.diag(np.diag(q))
        assert off.min() >= 0.0


def test_generator_k_mismatch():
    with pytest.raises(ValueError):
        build_generator(build_catalog(3), RateModel(4, 1.0, 0.0))


def test_detailed_balance():
    for k in (3, 4):
        for nu in (0.25, 1.0, 4.0):
            cat = build_catalog(k)
            pi = stationary_distribution(
                build_generator(cat, RateModel(k, nu, 0.0))
            )
            curve = gnp_frequency_curve(k, nu / (1 + nu))
            assert np.abs(pi.values - curve.values).max() <= 1e-9


def test_stationary_examples():
    cat = build_catalog(3)
    pi = stationary_distribution(build_generator(cat, RateModel(3, 1.0, 0.0)))
    assert pi.values == pytest.approx([1 / 8, 3 / 8, 3 / 8, 1 / 8], abs=1e-12)
    p = 0.3
    pi = stationary_distribution(
        build_generator(cat, RateModel(3, p / (1 - p), 0.0))
    )
    assert np.abs(pi.values - gnp_frequency_curve(3, p).values).max() <= 1e-10


def test_triadic_closure_shifts_mass():
    # at matched density, larger lam means more triangles, fewer paths
    k, p = 3, 0.5
    cat = build_catalog(k)
    tri, path = [], []
    for lam in (0.0, 0.5, 1.0, 2.0, 4.0):
        nu = nu_for_density(k, p, lam)
        pi = stationary_distribution(build_generator(cat, RateModel(k, nu, lam)))
        tri.append(pi.values[3])
        path.append(pi.values[2])
    assert all(b > a for a, b in zip(tri, tri[1:]))
    assert all(b < a for a, b in zip(path, path[1:]))


def test_nu_for_density_closed_form():
    assert nu_for_density(3, 0.5, 0.0) == pytest.approx(1.0, abs=1e-7)
    assert nu_for_density(3, 0.75, 0.0) == pytest.approx(3.0, abs=1e-6)
    assert nu_for_density(3, 0.5, 1.61) < 1.0


def test_nu_for_density_inverts():
    for k in (3, 4):
        cat = build_catalog(k)
        for lam in (0.0, 1.0, 3.0):
            for p in (0.05, 0.3, 0.5, 0.7, 0.95):
                nu = nu_for_density(k, p, lam)
                pi = stationary_distribution(
                    build_generator(cat, RateModel(k, nu, lam))
                )
                dens = float(pi.values @ (cat.edge_counts / cat.npairs))
                assert dens == pytest.approx(p, abs=1e-7)


def test_nu_for_density_boundary():
    with pytest.raises(ValueError):
        nu_for_density(3, 0.0, 0.0)
    with pytest.raises(ValueError):
        nu_for_density(3, 1.0, 0.0)


def test_fit_lambda_on_its_own_curve():
    # exact G_{k,p} census curves are the lam = 0 model's fixed points
    for k in (3, 4):
        freqs = [gnp_frequency_curve(k, p) for p in (0.2, 0.35, 0.5, 0.65, 0.8)]
        dens = [0.2, 0.35, 0.5, 0.65, 0.8]
        lam = fit_lambda(freqs, dens, k)
        assert lam <= 1e-3


def test_fit_lambda_recovers_model_generated_collection():
    # vectors drawn exactly from the stationary model at lam = 2
    k, lam_true = 3, 2.0
    ps = np.linspace(0.1, 0.8, 15)
    curves = backbone_curve(k, ps, lam_true)
    freqs = [FrequencyVector(k=k, values=row) for row in curves]
    lam = fit_lambda(freqs, ps, k)
    assert lam == pytest.approx(lam_true, abs=1e-2)


def test_fit_lambda_local_optimality():
    k = 3
    ps = np.linspace(0.15, 0.7, 10)
    curves = backbone_curve(k, ps, 1.2)
    rng = np.random.default_rng(0)
    noisy = np.clip(curves + rng.normal(0, 0.01, curves.shape), 0, None)
    noisy /= noisy.sum(axis=1, keepdims=True)
    dens = [
        float(v @ (build_catalog(k).edge_counts / 3)) for v in noisy
    ]
    lam = fit_lambda(noisy, dens, k)
    obj = lambda_objective(lam, noisy, dens, k)
    assert obj <= lambda_objective(0.0, noisy, dens, k) + 1e-12
    assert obj <= lambda_objective(2 * lam + 1e-3, noisy, dens, k) + 1e-12


def test_fit_lambda_validation():
    with pytest.raises(ValueError):
        fit_lambda([], [], 3)
    with pytest.raises(ValueError):
        fit_lambda([gnp_frequency_curve(3, 0.5)], [1.0], 3)


def test_backbone_residual_zero_on_curve():
    for p in (0.2, 0.5, 0.8):
        r = backbone_residual(gnp_frequency_curve(3, p), p, 0.0)
        assert np.abs(r).max() <= 1e-9


def test_backbone_residual_bipartite_paths():
    kb = complete_bipartite(5, 5)
    y = exact_census(kb, 3)
    r = backbone_residual(y, 5 / 9, 0.0)
    assert r[2] > 0  # path coordinate overrepresented
    assert abs(r.sum()) <= 1e-9


def test_residuals_sum_to_zero(rng):
    from conftest import random_graph

    for _ in range(5):
        g = random_graph(rng, 15, rng.uniform(0.2, 0.8))
        y = exact_census(g, 3)
        from subgraphspace.graphs import edge_density

        r = backbone_residual(y, edge_density(g), 1.5)
        assert abs(r.sum()) <= 1e-9
