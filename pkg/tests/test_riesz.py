import numpy as np
import pytest

from src.modules.helmholtz.domain.entities.gram import GramConfig, WeightMode
from src.modules.helmholtz.domain.exceptions import DomainError
from src.modules.helmholtz.infrastructure.services.riesz.gram import (
    diagonal_growth,
    extreme_eigs,
    gram_matrix,
    gram_weights,
    hilbert_bound_report,
    lambda_sweep,
    one_sided_bound_check,
    weighted_gram,
)
from src.modules.helmholtz.infrastructure.services.spectral_1d.eigenpairs import (
    eigenpairs_within,
    solve_eigenvalue,
)
from src.modules.helmholtz.infrastructure.services.spectral_1d.inner_products import (
    h_inner,
    h_inner_quadrature,
)


def test_single_function_gram(medium):
    pair = solve_eigenvalue(medium, 2)
    matrix = weighted_gram(medium, GramConfig(), [pair])
    assert matrix.shape == (1, 1)
    assert matrix[0, 0] == pytest.approx(h_inner(medium, pair, pair) / (1.0 + abs(pair.lam)), rel=1e-14)
    assert matrix[0, 0] > 0


def test_shifted_weights_handle_coincidence(medium):
    pairs = [solve_eigenvalue(medium, j) for j in (0, 1, 2)]
    gcfg = GramConfig(weight_mode=WeightMode.SHIFTED, lambda_ref=pairs[1].lam)
    weights = gram_weights(pairs, gcfg)
    assert weights[1] == 1.0
    assert weights[0] == pytest.approx(abs(pairs[0].lam - pairs[1].lam))
    assert weights[2] == pytest.approx(abs(pairs[2].lam - pairs[1].lam))


def test_gram_matrix_requires_lambda_at_least_one(medium):
    with pytest.raises(DomainError):
        gram_matrix(medium, GramConfig(), 0.5)


def test_truncations_are_nested_exactly(medium):
    """M_Lambda - главный подблок M_{2 Lambda} без погрешности."""
    small = gram_matrix(medium, GramConfig(), 200.0)
    large = gram_matrix(medium, GramConfig(), 400.0)
    small_indices = [p.index for p in eigenpairs_within(medium, 200.0)]
    large_indices = [p.index for p in eigenpairs_within(medium, 400.0)]
    start = large_indices.index(small_indices[0])
    assert large_indices[start : start + len(small_indices)] == small_indices

    block = large.to_dense()[start : start + small.n, start : start + small.n]
    np.testing.assert_allclose(block, small.to_dense(), rtol=1e-14, atol=0)
    dense = large.to_dense()
    assert np.array_equal(dense, dense.T)


def test_sweep_interlaces_and_stabilizes(medium):
    rows = lambda_sweep(medium, GramConfig(), start=10.0, dimension_cap=400)
    assert len(rows) >= 5
    assert [r.Lambda for r in rows] == [10.0 * 2**k for k in range(len(rows))]
    assert all(r.dim <= 400 for r in rows)

    mins = np.array([r.min_eig for r in rows])
    maxs = np.array([r.max_eig for r in rows])
    assert np.all(mins > 0)
    assert np.all(np.diff(mins) <= 1e-12)
    assert np.all(np.diff(maxs) >= -1e-12)

    changes = np.abs(np.diff(mins)) / mins[:-1]
    assert changes[-1] <= changes[0]


def test_min_eigenvalue_degenerates_with_contrast(medium):
    """При фиксированном Lambda min собственное значение падает при |sigma_-| -> 0."""
    mins = [
        extreme_eigs(gram_matrix(medium.with_sigma_minus(s), GramConfig(), 2000.0))[0]
        for s in (-2.0, -1.0, -0.5, -0.25)
    ]
    assert all(v > 0 for v in mins)
    assert all(b < a for a, b in zip(mins, mins[1:]))


def test_hilbert_type_bound(medium):
    report = hilbert_bound_report(medium, 20)
    assert report.g_fit > 0
    assert report.bounded
    assert report.growth <= 1.05
    i, j = report.worst_pair
    assert i != j and abs(i) <= 20 and abs(j) <= 20

    with pytest.raises(DomainError):
        hilbert_bound_report(medium, 1)


def test_one_sided_bound(medium):
    d_constant, worst = one_sided_bound_check(medium, 10, trials=200, seed=0)
    assert d_constant > 0
    assert worst <= 1.0
    assert one_sided_bound_check(medium, 10, trials=200, seed=0) == (d_constant, worst)


def test_minimum_stabilizes_and_diagonal_stays_bounded(medium):
    rows = lambda_sweep(medium, GramConfig(), start=10.0, dimension_cap=800)
    assert len(rows) >= 6
    mins = [r.min_eig for r in rows]
    assert abs(mins[-1] - mins[-2]) / mins[-2] < 0.02
    assert diagonal_growth(rows) <= 1.05
    assert all(b.max_diagonal >= a.max_diagonal for a, b in zip(rows, rows[1:]))


def test_assembled_gram_entries_match_quadrature(medium):
    """Элементы M_Lambda, умноженные обратно на веса, совпадают с квадратурой h(phi_i, phi_j)."""
    pairs = eigenpairs_within(medium, 40.0)
    dense = gram_matrix(medium, GramConfig(), 40.0).to_dense()
    weights = np.sqrt(1.0 + np.abs(np.array([p.lam for p in pairs])))
    unweighted = dense * np.outer(weights, weights)
    diagonal = np.diag(unweighted)
    for i, p in enumerate(pairs):
        for j in range(i, len(pairs)):
            expected = h_inner_quadrature(medium, p, pairs[j])
            scale = max(abs(expected), np.sqrt(diagonal[i] * diagonal[j]))
            assert abs(unweighted[i, j] - expected) <= 1e-8 * scale, (p.index, pairs[j].index)
