import math

import numpy as np
import pytest

from src.modules.helmholtz.domain.entities.eig_result import EigResult
from src.modules.helmholtz.domain.exceptions import CholeskyError, MatchingError
from src.modules.helmholtz.infrastructure.services.eig.generalized_eig import generalized_sym_eig
from src.modules.helmholtz.infrastructure.services.eig.matching import match_to_analytic
from src.modules.helmholtz.infrastructure.services.fem.assembly import assemble_all
from src.modules.helmholtz.infrastructure.services.fem.mesh_builder import build_mesh
from src.modules.helmholtz.infrastructure.services.spectral_1d.eigenpairs import spectrum


def _fem_window_errors(medium, h: float, refine_levels: int, pairs) -> np.ndarray:
    mesh = build_mesh(medium, h, 0.1, refine_levels)
    matrices = assemble_all(medium, mesh)
    window = max(abs(p.lam) for p in pairs)
    result = generalized_sym_eig(
        matrices.stiffness, matrices.mass, subset_by_value=(-1.2 * window, 1.2 * window)
    )
    matches = match_to_analytic(result, pairs, window)
    assert len(matches) == len(pairs)
    return np.array([m.relative_error for m in matches])


def test_identical_pencil_gives_unit_spectrum():
    rng = np.random.default_rng(5)
    base = rng.standard_normal((6, 6))
    spd = base @ base.T + 6 * np.eye(6)
    result = generalized_sym_eig(spd, spd)
    np.testing.assert_allclose(result.eigenvalues, np.ones(6), rtol=1e-10)


def test_indefinite_diagonal_pencil():
    result = generalized_sym_eig(np.diag([2.0, -3.0]), np.eye(2))
    np.testing.assert_allclose(result.eigenvalues, [-3.0, 2.0])
    np.testing.assert_allclose(np.abs(result.eigenvectors), np.array([[0.0, 1.0], [1.0, 0.0]]))


def test_non_positive_mass_rejected():
    with pytest.raises(CholeskyError):
        generalized_sym_eig(np.eye(2), np.diag([1.0, -1.0]))


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        generalized_sym_eig(np.eye(3), np.eye(2))


def test_fem_pencil_orthonormal_with_sign_convention(coarse_matrices):
    result = generalized_sym_eig(coarse_matrices.stiffness, coarse_matrices.mass, subset_by_index=(0, 40))
    vectors = result.eigenvectors
    mass = coarse_matrices.mass.to_dense()
    np.testing.assert_allclose(vectors.T @ mass @ vectors, np.eye(41), atol=1e-10)
    assert np.all(np.diff(result.eigenvalues) >= 0)

    peaks = vectors[np.argmax(np.abs(vectors), axis=0), np.arange(vectors.shape[1])]
    assert np.all(peaks > 0)


def test_permutation_invariance(coarse_matrices):
    stiffness = coarse_matrices.stiffness.to_dense()
    mass = coarse_matrices.mass.to_dense()
    order = np.random.default_rng(2).permutation(stiffness.shape[0])
    direct = generalized_sym_eig(stiffness, mass, subset_by_value=(-5.0, 5.0)).eigenvalues
    permuted = generalized_sym_eig(
        stiffness[np.ix_(order, order)], mass[np.ix_(order, order)], subset_by_value=(-5.0, 5.0)
    ).eigenvalues
    np.testing.assert_allclose(permuted, direct, rtol=1e-9, atol=1e-8)


def test_matching_is_injective_and_sorted(medium, coarse_matrices):
    pairs = spectrum(medium, -3, 3)
    result = generalized_sym_eig(coarse_matrices.stiffness, coarse_matrices.mass, subset_by_value=(-10.0, 10.0))
    matches = match_to_analytic(result, pairs, window=10.0)
    assert [m.index for m in matches] == list(range(-3, 4))
    assert len({m.discrete_position for m in matches}) == len(matches)
    assert max(m.relative_error for m in matches) < 1e-2


def test_matching_empty_window(medium):
    pairs = spectrum(medium, -2, 2)
    assert match_to_analytic(EigResult(np.array([1.0]), np.eye(1)), pairs, window=0.0) == []


def test_matching_fails_without_nearby_value(medium):
    pairs = spectrum(medium, 1, 1)
    far = EigResult(np.array([100.0]), np.eye(1))
    with pytest.raises(MatchingError):
        match_to_analytic(far, pairs, window=10.0)


def test_fem_eigenvalues_match_analytic(medium):
    pairs = spectrum(medium, -10, 10)
    errors = _fem_window_errors(medium, 2.0**-8, 2, pairs)
    assert errors.max() <= 1e-4


def test_fem_convergence_order(medium):
    pairs = spectrum(medium, -10, 10)
    errors = [_fem_window_errors(medium, h, 2, pairs).max() for h in (2.0**-6, 2.0**-7, 2.0**-8)]
    orders = [math.log2(a / b) for a, b in zip(errors, errors[1:])]
    assert min(orders) >= 1.9


@pytest.mark.slow
def test_fem_on_finest_default_mesh(medium):
    pairs = spectrum(medium, -10, 10)
    errors = [_fem_window_errors(medium, h, 5, pairs).max() for h in (2.0**-7, 2.0**-8, 2.0**-9)]
    assert errors[-1] <= 1e-4
    assert math.log2(errors[-2] / errors[-1]) >= 1.9
