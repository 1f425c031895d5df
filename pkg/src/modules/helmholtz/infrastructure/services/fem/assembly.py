"""
Сборка P1-матриц жёсткости и масс с точным поэлементным интегрированием.

Интерфейс x = 0 является узлом сетки, поэтому на каждом элементе коэффициенты
постоянны и элементные матрицы вычисляются в замкнутой форме.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.modules.helmholtz.domain.entities.band_matrix import SymBandMatrix
from src.modules.helmholtz.domain.entities.medium import MediumConfig
from src.modules.helmholtz.domain.entities.mesh import Mesh
from src.modules.helmholtz.domain.exceptions import MeshError


class AssemblyWeight(str, Enum):
    SIGMA = "sigma"
    ABS_SIGMA = "abs_sigma"
    C = "c"


@dataclass(frozen=True)
class FemMatrices:
    """Набор матриц одной сетки после исключения граничных узлов."""

    stiffness: SymBandMatrix
    stiffness_abs: SymBandMatrix
    mass: SymBandMatrix
    kappa: np.ndarray


def _check_mesh(config: MediumConfig, mesh: Mesh) -> None:
    if not mesh.has_interface_node:
        raise MeshError("Для сборки нужна сетка с узлом в x = 0.")
    if mesh.a_minus != config.a_minus or mesh.a_plus != config.a_plus:
        raise MeshError(
            f"Сетка [{mesh.a_minus}, {mesh.a_plus}] не совпадает с областью "
            f"[{config.a_minus}, {config.a_plus}]"
        )


def element_coefficients(config: MediumConfig, mesh: Mesh, name: str) -> np.ndarray:
    """Значение кусочно-постоянного коэффициента на каждом элементе (по знаку середины)."""
    on_minus = {
        "sigma": config.sigma_minus,
        "abs_sigma": abs(config.sigma_minus),
        "c": config.c_minus,
        "kappa": config.kappa_on_minus,
    }
    on_plus = {
        "sigma": config.sigma_plus,
        "abs_sigma": config.sigma_plus,
        "c": config.c_plus,
        "kappa": config.kappa_on_plus,
    }
    return np.where(mesh.element_midpoints < 0, on_minus[name], on_plus[name])


def _interior(diagonal: np.ndarray, off_diagonal: np.ndarray) -> SymBandMatrix:
    # исключение строк и столбцов узлов a_- и a_+
    return SymBandMatrix.tridiagonal(diagonal[1:-1], off_diagonal[1:-1])


def assemble(config: MediumConfig, mesh: Mesh, weight: AssemblyWeight | str) -> SymBandMatrix:
    """
    Трёхдиагональная матрица жёсткости (sigma, abs_sigma) или масс (c).

    Args:
        config (MediumConfig): Коэффициенты задачи.
        mesh (Mesh): Сетка с узлом в x = 0.
        weight (AssemblyWeight | str): Вес билинейной формы.

    Returns:
        SymBandMatrix: Матрица размера n_dofs с условием Дирихле.
    """
    _check_mesh(config, mesh)
    weight = AssemblyWeight(weight)
    lengths = mesh.element_lengths
    q = element_coefficients(config, mesh, weight.value)

    diagonal = np.zeros(mesh.n_nodes)
    if weight is AssemblyWeight.C:
        local = q * lengths / 6.0
        diagonal[:-1] += 2.0 * local
        diagonal[1:] += 2.0 * local
        off_diagonal = local
    else:
        local = q / lengths
        diagonal[:-1] += local
        diagonal[1:] += local
        off_diagonal = -local
    return _interior(diagonal, off_diagonal)


def assemble_all(config: MediumConfig, mesh: Mesh) -> FemMatrices:
    return FemMatrices(
        stiffness=assemble(config, mesh, AssemblyWeight.SIGMA),
        stiffness_abs=assemble(config, mesh, AssemblyWeight.ABS_SIGMA),
        mass=assemble(config, mesh, AssemblyWeight.C),
        kappa=element_coefficients(config, mesh, "kappa"),
    )
