import numpy as np
import pytest

from src.modules.helmholtz.domain.entities.band_matrix import SymBandMatrix
from src.modules.helmholtz.domain.entities.mesh import Mesh
from src.modules.helmholtz.domain.exceptions import MeshError


@pytest.fixture
def pentadiagonal() -> np.ndarray:
    rng = np.random.default_rng(3)
    dense = np.zeros((7, 7))
    for k, scale in enumerate((4.0, -1.0, 0.25)):
        values = scale * (1.0 + 0.1 * rng.standard_normal(7 - k))
        dense += np.diag(values, k=-k)
        if k:
            dense += np.diag(values, k=k)
    return dense


def test_from_dense_recovers_bandwidth(pentadiagonal):
    matrix = SymBandMatrix.from_dense(pentadiagonal)
    assert matrix.bandwidth == 2
    assert matrix.n == 7
    assert np.array_equal(matrix.to_dense(), pentadiagonal)


def test_from_dense_rejects_asymmetric():
    with pytest.raises(ValueError):
        SymBandMatrix.from_dense(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_matvec_and_quadratic_form(pentadiagonal):
    matrix = SymBandMatrix.from_dense(pentadiagonal)
    v = np.arange(1.0, 8.0)
    w = np.cos(np.arange(7.0))
    np.testing.assert_allclose(matrix @ v, pentadiagonal @ v, rtol=1e-14)
    assert matrix.quadratic_form(v, w) == pytest.approx(w @ pentadiagonal @ v, rel=1e-13)
    np.testing.assert_allclose(matrix.to_sparse().toarray(), pentadiagonal)


def test_arithmetic_aligns_bandwidths(pentadiagonal):
    wide = SymBandMatrix.from_dense(pentadiagonal)
    eye = SymBandMatrix.identity(7)
    np.testing.assert_allclose((wide + eye).to_dense(), pentadiagonal + np.eye(7))
    np.testing.assert_allclose((wide - eye * 2.0).to_dense(), pentadiagonal - 2.0 * np.eye(7))
    np.testing.assert_allclose((3.0 * wide).to_dense(), 3.0 * pentadiagonal)
    with pytest.raises(ValueError):
        wide + SymBandMatrix.identity(3)


def test_positive_definiteness():
    laplacian = SymBandMatrix.tridiagonal(np.full(5, 2.0), np.full(4, -1.0))
    assert laplacian.is_positive_definite()
    assert not (laplacian * -1.0).is_positive_definite()
    assert laplacian.norm_inf() == 4.0


def test_principal_submatrix(pentadiagonal):
    matrix = SymBandMatrix.from_dense(pentadiagonal)
    np.testing.assert_array_equal(matrix.principal_submatrix(2, 6).to_dense(), pentadiagonal[2:6, 2:6])


def test_text_dump_round_trip(pentadiagonal):
    matrix = SymBandMatrix.from_dense(pentadiagonal)
    restored = SymBandMatrix.from_text(matrix.to_text())
    assert np.array_equal(restored.bands, matrix.bands)
    with pytest.raises(ValueError):
        SymBandMatrix.from_text("3 1\n1.0 2.0 3.0\n")


def test_mesh_validation_and_dump():
    with pytest.raises(MeshError):
        Mesh(np.array([0.0, 1.0]))
    with pytest.raises(MeshError):
        Mesh(np.array([0.0, 2.0, 1.0]))

    mesh = Mesh(np.array([-1.0, -0.5, 0.0, 0.25, 1.0]))
    assert mesh.interface_index == 2
    assert mesh.n_dofs == 3
    restored = Mesh.from_text(mesh.to_text())
    assert np.array_equal(restored.nodes, mesh.nodes)
    assert float(mesh.evaluate(np.array([1.0, 2.0, 4.0]), 0.125)) == pytest.approx(3.0)
