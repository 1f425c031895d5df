"""
Дискретная форма F(u, lambda) = A_sigma u - lambda C u - G(u) и её энергия.

Кубический член G(u)_i = int kappa u^3 psi_i и квартика int kappa u^4 интегрируются
поэлементно точно (для линейной на элементе функции это многочлены от узловых значений),
поэтому grad Psi_lambda = F совпадает до округления.
"""

import numpy as np

from src.modules.helmholtz.domain.entities.band_matrix import SymBandMatrix
from src.modules.helmholtz.domain.entities.mesh import Mesh
from src.modules.helmholtz.infrastructure.services.fem.assembly import FemMatrices


def _element_values(mesh: Mesh, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    full = mesh.full_vector(u)
    return full[:-1], full[1:]


def cubic_load(mesh: Mesh, matrices: FemMatrices, u: np.ndarray) -> np.ndarray:
    """G(u)_i = int kappa u^3 psi_i dx."""
    p, q = _element_values(mesh, u)
    scale = matrices.kappa * mesh.element_lengths / 20.0
    left = scale * (4 * p**3 + 3 * p**2 * q + 2 * p * q**2 + q**3)
    right = scale * (p**3 + 2 * p**2 * q + 3 * p * q**2 + 4 * q**3)

    load = np.zeros(mesh.n_nodes)
    load[:-1] += left
    load[1:] += right
    return load[1:-1]


def cubic_jacobian(mesh: Mesh, matrices: FemMatrices, u: np.ndarray) -> SymBandMatrix:
    """Производная G по u: матрица масс с весом 3 kappa u^2, согласованная с cubic_load."""
    p, q = _element_values(mesh, u)
    scale = matrices.kappa * mesh.element_lengths / 20.0

    diagonal = np.zeros(mesh.n_nodes)
    diagonal[:-1] += scale * (12 * p**2 + 6 * p * q + 2 * q**2)
    diagonal[1:] += scale * (2 * p**2 + 6 * p * q + 12 * q**2)
    off_diagonal = scale * (3 * p**2 + 4 * p * q + 3 * q**2)
    return SymBandMatrix.tridiagonal(diagonal[1:-1], off_diagonal[1:-1])


def quartic(mesh: Mesh, matrices: FemMatrices, u: np.ndarray) -> float:
    """int kappa u^4 dx."""
    p, q = _element_values(mesh, u)
    per_element = p**4 + p**3 * q + p**2 * q**2 + p * q**3 + q**4
    return float(np.sum(matrices.kappa * mesh.element_lengths * per_element) / 5.0)


def residual(mesh: Mesh, matrices: FemMatrices, u: np.ndarray, lam: float) -> np.ndarray:
    """Слабая невязка F(u, lambda) = A_sigma u - lambda C u - G(u)."""
    u = np.asarray(u, dtype=float)
    return matrices.stiffness @ u - lam * (matrices.mass @ u) - cubic_load(mesh, matrices, u)


def jacobian(mesh: Mesh, matrices: FemMatrices, u: np.ndarray, lam: float) -> SymBandMatrix:
    """F_u = A_sigma - lambda C - M(3 kappa u^2)."""
    return matrices.stiffness - matrices.mass * lam - cubic_jacobian(mesh, matrices, u)


def energy(mesh: Mesh, matrices: FemMatrices, u: np.ndarray, lam: float) -> float:
    """Psi_lambda(u) = 1/2 u^T A_sigma u - lambda/2 u^T C u - 1/4 int kappa u^4."""
    u = np.asarray(u, dtype=float)
    return (
        0.5 * matrices.stiffness.quadratic_form(u)
        - 0.5 * lam * matrices.mass.quadratic_form(u)
        - 0.25 * quartic(mesh, matrices, u)
    )
