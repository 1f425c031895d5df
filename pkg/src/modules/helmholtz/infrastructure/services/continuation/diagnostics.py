import math

import numpy as np

from src.modules.helmholtz.domain.entities.medium import MediumConfig
from src.modules.helmholtz.domain.entities.mesh import Mesh
from src.modules.helmholtz.domain.exceptions import DomainError

ZERO_BAND = 1e-8
PLATEAU_SPREAD = 0.05


def _sign_changes(values: np.ndarray, tol: float) -> int:
    signs = np.sign(values[np.abs(values) > tol])
    return int(np.count_nonzero(np.diff(signs)))


def _is_monotone(values: np.ndarray, tol: float) -> bool:
    steps = np.diff(values)
    return bool(np.all(steps >= -tol) or np.all(steps <= tol))


def count_interior_zeros(mesh: Mesh, u: np.ndarray) -> tuple[int, int, bool, bool]:
    """
    Узловой подсчёт нулей и монотонности P1-функции на каждой подобласти.

    Узлы с |u| < 1e-8 ||u||_inf не участвуют в подсчёте смен знака.

    Returns:
        tuple: (zeros_minus, zeros_plus, monotone_minus, monotone_plus);
        монотонность проверяется на замкнутых подобластях [a_-, 0] и [0, a_+].
    """
    full = mesh.full_vector(u)
    peak = float(np.max(np.abs(full)))
    if peak == 0.0:
        raise DomainError("Подсчёт нулей для нулевого вектора не определён.")
    tol = ZERO_BAND * peak
    interface = mesh.interface_index

    zeros_minus = _sign_changes(full[1:interface], tol)
    zeros_plus = _sign_changes(full[interface + 1 : -1], tol)
    monotone_minus = _is_monotone(full[: interface + 1], tol)
    monotone_plus = _is_monotone(full[interface:], tol)
    return zeros_minus, zeros_plus, monotone_minus, monotone_plus


def plateau_value(config: MediumConfig, mesh: Mesh, u: np.ndarray, lam: float) -> tuple[float, float] | None:
    """
    Плато на средней половине Omega_-: (среднее значение, отклонение |mean| от sqrt(-lambda)).

    Возвращает None при lambda >= 0 или если разброс больше 5% от |mean|.
    """
    if lam >= 0:
        return None
    lo = config.a_minus + 0.25 * config.length_minus
    hi = config.a_minus + 0.75 * config.length_minus
    inside = (mesh.nodes >= lo) & (mesh.nodes <= hi)
    values = mesh.full_vector(u)[inside]
    if values.size < 2:
        return None

    mean = float(np.mean(values))
    if mean == 0.0 or float(np.std(values, ddof=1)) >= PLATEAU_SPREAD * abs(mean):
        return None
    target = math.sqrt(-lam)
    return mean, abs(abs(mean) - target) / target


def detect_plateau(config: MediumConfig, mesh: Mesh, point) -> tuple[float, float] | None:
    return plateau_value(config, mesh, point.u, point.lam)


def extremum_half_widths(mesh: Mesh, u: np.ndarray) -> tuple[float, ...]:
    """
    Ширина на половине высоты для каждого знакопостоянного участка u на [a_-, 0].

    Участок обрезается узлами, где u меняет знак; ширина измеряется по связной
    окрестности максимума |u|, на которой |u| >= max|u| / 2.
    """
    full = mesh.full_vector(u)
    interface = mesh.interface_index
    nodes = mesh.nodes[: interface + 1]
    values = full[: interface + 1]
    peak = float(np.max(np.abs(full)))
    if peak == 0.0:
        return ()

    signs = np.sign(np.where(np.abs(values) > ZERO_BAND * peak, values, 0.0))
    widths = []
    start = None
    for i in range(values.size + 1):
        inside = i < values.size and signs[i] != 0 and (start is None or signs[i] == signs[start])
        if inside and start is None:
            start = i
            continue
        if inside:
            continue
        if start is not None:
            lobe = np.abs(values[start:i])
            top = int(np.argmax(lobe))
            left = right = top
            while left > 0 and lobe[left - 1] >= 0.5 * lobe[top]:
                left -= 1
            while right < lobe.size - 1 and lobe[right + 1] >= 0.5 * lobe[top]:
                right += 1
            widths.append(float(nodes[start + right] - nodes[start + left]))
            start = i if i < values.size and signs[i] != 0 else None
    return tuple(widths)
