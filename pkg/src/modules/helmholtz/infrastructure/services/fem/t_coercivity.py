"""
Явный оператор T для слабой T-коэрцитивности и её дискретная проверка.

    (T u)(x) = u(x)                         на (0, a_+),
    (T u)(x) = 2 chi(x) u(-m x) - u(x)      на (a_-, 0),

где chi - гладкая срезающая функция, равная 1 около интерфейса.
Проверяется, что форма a(u, T u) + k <u, u>_c ограничена снизу через ||u||_H^2.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.sparse

from src.modules.helmholtz.domain.entities.medium import MediumConfig
from src.modules.helmholtz.domain.entities.mesh import Mesh
from src.modules.helmholtz.domain.exceptions import DomainError
from src.modules.helmholtz.infrastructure.services.eig.generalized_eig import (
    generalized_sym_eig,
)
from src.modules.helmholtz.infrastructure.services.fem.assembly import (
    AssemblyWeight,
    assemble,
)

logger = logging.getLogger(__name__)

PASS_THRESHOLD = 0.4


@dataclass(frozen=True)
class Cutoff:
    """
    chi(x) = 1 при |x| <= r1, 0 при |x| >= r2, между ними квинтический smootherstep.

    Функция класса C^2 с компактным носителем; этого достаточно для P1-дискретизации.
    """

    r1: float
    r2: float

    def __post_init__(self) -> None:
        if not 0 < self.r1 < self.r2:
            raise DomainError(f"Нужно 0 < r1 < r2, получено ({self.r1}, {self.r2})")

    @classmethod
    def default_for(cls, config: MediumConfig) -> "Cutoff":
        return cls(r1=0.05 * config.length_minus, r2=0.5 * config.length_minus)

    def __call__(self, x: np.ndarray | float) -> np.ndarray:
        s = np.clip((np.abs(np.asarray(x, dtype=float)) - self.r1) / (self.r2 - self.r1), 0.0, 1.0)
        return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s)


def _check_reflection(mesh: Mesh, m: float, chi: Cutoff) -> None:
    if not 0 < m < mesh.a_plus / abs(mesh.a_minus):
        raise DomainError(f"Нужно 0 < m < a_+/|a_-| = {mesh.a_plus / abs(mesh.a_minus):.6g}, получено {m}")
    if chi.r2 > abs(mesh.a_minus):
        raise DomainError("Носитель срезающей функции выходит за a_-.")


def apply_T(mesh: Mesh, u: np.ndarray, m: float, chi: Cutoff) -> np.ndarray:
    """
    Узловая интерполяция T u для P1-функции с внутренними коэффициентами u.

    Значение u(-m x) берётся линейной интерполяцией по узлам сетки. Узлы Omega_+
    не меняются, поэтому дискретный T o T совпадает с тождеством.
    """
    _check_reflection(mesh, m, chi)
    full = mesh.full_vector(u)
    nodes = mesh.nodes
    minus = nodes < 0

    reflected = np.interp(-m * nodes[minus], nodes, full)
    result = full.copy()
    result[minus] = 2.0 * chi(nodes[minus]) * reflected - full[minus]
    result[0] = result[-1] = 0.0
    return result[1:-1]


def transform_matrix(mesh: Mesh, m: float, chi: Cutoff) -> scipy.sparse.csr_matrix:
    """Матрица оператора apply_T на внутренних степенях свободы."""
    _check_reflection(mesh, m, chi)
    nodes = mesh.nodes
    n_dofs = mesh.n_dofs

    rows, cols, data = [], [], []
    for node in range(1, mesh.n_nodes - 1):
        dof = node - 1
        x = nodes[node]
        if x >= 0:
            rows.append(dof)
            cols.append(dof)
            data.append(1.0)
            continue

        rows.append(dof)
        cols.append(dof)
        data.append(-1.0)

        weight = 2.0 * float(chi(x))
        if weight == 0.0:
            continue
        target = -m * x
        right = int(np.searchsorted(nodes, target, side="right"))
        left = right - 1
        theta = (target - nodes[left]) / (nodes[right] - nodes[left])
        for source, share in ((left, 1.0 - theta), (right, theta)):
            if 0 < source < mesh.n_nodes - 1 and share != 0.0:
                rows.append(dof)
                cols.append(source - 1)
                data.append(weight * share)

    return scipy.sparse.csr_matrix((data, (rows, cols)), shape=(n_dofs, n_dofs))


@dataclass(frozen=True)
class CoercivityResult:
    m: float
    k: float
    min_eig: float
    passed: bool


def coercivity_check(
    config: MediumConfig,
    mesh: Mesh,
    m: float,
    chi: Cutoff,
    k: float,
    weight: AssemblyWeight = AssemblyWeight.SIGMA,
    use_transform: bool = True,
) -> CoercivityResult:
    """
    Минимальное собственное значение симметризованной формы a(u, T u) + k <u, u>_c
    относительно матрицы Грама ||.||_H.

    Args:
        config (MediumConfig): Данные задачи.
        mesh (Mesh): Сетка с узлом в x = 0.
        m (float): Коэффициент отражения, 0 < m < a_+/|a_-|.
        chi (Cutoff): Срезающая функция.
        k (float): Вес компактного возмущения.
        weight (AssemblyWeight): Вес формы a (abs_sigma используется для проверки нормировки).
        use_transform (bool): Если False, T заменяется тождеством.

    Returns:
        CoercivityResult: min_eig и признак min_eig >= 0.4.
    """
    stiffness = assemble(config, mesh, weight).to_sparse()
    gram = assemble(config, mesh, AssemblyWeight.ABS_SIGMA)
    mass = assemble(config, mesh, AssemblyWeight.C).to_sparse()

    form = stiffness @ transform_matrix(mesh, m, chi) if use_transform else stiffness
    form = form.toarray()
    symmetric = 0.5 * (form + form.T) + k * mass.toarray()

    result = generalized_sym_eig(symmetric, gram, subset_by_index=(0, 0))
    min_eig = float(result.eigenvalues[0])
    logger.debug("m=%.4g k=%.4g: min_eig=%.6f", m, k, min_eig)
    return CoercivityResult(m=m, k=k, min_eig=min_eig, passed=min_eig >= PASS_THRESHOLD)


def default_k_grid() -> list[float]:
    return [0.0] + [float(v) for v in np.geomspace(1e-2, 1e5, 15)]


def coercivity_sweep(
    config: MediumConfig, mesh: Mesh, m: float, chi: Cutoff, ks: list[float]
) -> list[CoercivityResult]:
    """Проверка по сетке значений k, по возрастанию k."""
    results = [coercivity_check(config, mesh, m, chi, k) for k in sorted(ks)]
    best = max(results, key=lambda r: r.min_eig)
    logger.info("T-коэрцитивность: m=%.4g, лучшее k=%.4g, min_eig=%.6f", m, best.k, best.min_eig)
    return results
