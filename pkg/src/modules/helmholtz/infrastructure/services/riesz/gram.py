"""
Нормированная матрица Грама собственных функций в H-скалярном произведении
и численные свидетельства того, что (phi_j) образуют базис Рисса.
"""

import logging
from dataclasses import dataclass

import numpy as np

from src.modules.helmholtz.domain.entities.band_matrix import SymBandMatrix
from src.modules.helmholtz.domain.entities.gram import GramConfig, WeightMode
from src.modules.helmholtz.domain.entities.medium import EigenPair, MediumConfig
from src.modules.helmholtz.domain.exceptions import DomainError
from src.modules.helmholtz.infrastructure.services.eig.generalized_eig import (
    generalized_sym_eig,
)
from src.modules.helmholtz.infrastructure.services.spectral_1d.eigenpairs import (
    eigenpairs_within,
    spectrum,
)
from src.modules.helmholtz.infrastructure.services.spectral_1d.inner_products import (
    h_gram,
)

logger = logging.getLogger(__name__)

DEFAULT_DIMENSION_CAP = 800


@dataclass(frozen=True)
class SweepRow:
    Lambda: float
    dim: int
    min_eig: float
    max_eig: float
    max_diagonal: float
    sigma_minus: float


@dataclass(frozen=True)
class HilbertBoundReport:
    """
    Подобранная константа G в |h_ij| <= G sqrt((1+|l_i|)(1+|l_j|)) / (1+|i|+|j|).

    Attributes:
        g_fit (float): Максимум отношения по i != j, |i|, |j| <= J.
        worst_pair (tuple[int, int]): Пара индексов, на которой он достигается.
        g_fit_double (float): То же для |i|, |j| <= 2J.
        bounded (bool): g_fit_double / g_fit <= 1.05.
    """

    J: int
    g_fit: float
    worst_pair: tuple[int, int]
    g_fit_double: float
    bounded: bool

    @property
    def growth(self) -> float:
        return self.g_fit_double / self.g_fit


def gram_weights(pairs: list[EigenPair], gcfg: GramConfig) -> np.ndarray:
    lams = np.array([p.lam for p in pairs], dtype=float)
    if gcfg.weight_mode is WeightMode.GROWTH:
        return 1.0 + np.abs(lams)
    distance = np.abs(lams - gcfg.lambda_ref)
    coincide = distance <= gcfg.coincidence_tol * max(1.0, abs(gcfg.lambda_ref))
    return np.where(coincide, 1.0, distance)


def weighted_gram(config: MediumConfig, gcfg: GramConfig, pairs: list[EigenPair]) -> np.ndarray:
    """h(phi_i, phi_j) / sqrt(w_i w_j) для пар в заданном порядке."""
    scale = 1.0 / np.sqrt(gram_weights(pairs, gcfg))
    return h_gram(config, pairs) * np.outer(scale, scale)


def gram_matrix(config: MediumConfig, gcfg: GramConfig, Lambda: float) -> SymBandMatrix:
    """
    Матрица M_Lambda по всем индексам с |lambda_j| <= Lambda, упорядоченным по j.

    Матрицы для Lambda и 2 Lambda совпадают на общем главном подблоке точно.
    """
    if Lambda < 1:
        raise DomainError(f"Нужно Lambda >= 1, получено {Lambda}")
    pairs = eigenpairs_within(config, Lambda)
    dense = weighted_gram(config, gcfg, pairs)
    return SymBandMatrix.from_dense(dense, bandwidth=max(len(pairs) - 1, 0))


def extreme_eigs(matrix: SymBandMatrix | np.ndarray) -> tuple[float, float]:
    """Наименьшее и наибольшее собственные значения (C = единичная матрица)."""
    n = matrix.n if isinstance(matrix, SymBandMatrix) else np.asarray(matrix).shape[0]
    result = generalized_sym_eig(matrix, np.eye(n))
    return float(result.eigenvalues[0]), float(result.eigenvalues[-1])


def lambda_sweep(
    config: MediumConfig,
    gcfg: GramConfig,
    start: float = 10.0,
    dimension_cap: int = DEFAULT_DIMENSION_CAP,
) -> list[SweepRow]:
    """Lambda = start * 2^k, пока размер M_Lambda не превысит dimension_cap."""
    rows = []
    Lambda = start
    while True:
        matrix = gram_matrix(config, gcfg, Lambda)
        if matrix.n > dimension_cap:
            break
        low, high = extreme_eigs(matrix)
        rows.append(
            SweepRow(
                Lambda=Lambda,
                dim=matrix.n,
                min_eig=low,
                max_eig=high,
                max_diagonal=float(np.max(matrix.diagonal())),
                sigma_minus=config.sigma_minus,
            )
        )
        logger.debug("Lambda=%g dim=%d min=%.6g max=%.6g", Lambda, matrix.n, low, high)
        Lambda *= 2.0
    logger.info("Развёртка Рисса для sigma_-=%g: %d значений Lambda", config.sigma_minus, len(rows))
    return rows


def diagonal_growth(rows: list[SweepRow]) -> float:
    """Отношение max диагонали на последнем Lambda к её значению в середине развёртки."""
    if not rows:
        raise DomainError("Пустая развёртка")
    return rows[-1].max_diagonal / rows[len(rows) // 2].max_diagonal


def _bound_ratios(config: MediumConfig, pairs: list[EigenPair]) -> np.ndarray:
    gram = h_gram(config, pairs)
    indices = np.array([abs(p.index) for p in pairs], dtype=float)
    growth = np.sqrt(1.0 + np.abs(np.array([p.lam for p in pairs])))
    ratios = np.abs(gram) * (1.0 + indices[:, None] + indices[None, :]) / np.outer(growth, growth)
    np.fill_diagonal(ratios, 0.0)
    return ratios


def hilbert_bound_report(config: MediumConfig, J: int, growth_tol: float = 1.05) -> HilbertBoundReport:
    if J < 2:
        raise DomainError(f"Нужно J >= 2, получено {J}")
    pairs = spectrum(config, -2 * J, 2 * J)
    ratios = _bound_ratios(config, pairs)

    inner = slice(J, 3 * J + 1)
    block = ratios[inner, inner]
    row, col = np.unravel_index(int(np.argmax(block)), block.shape)
    g_fit = float(block[row, col])
    g_fit_double = float(np.max(ratios))
    worst = (pairs[J + row].index, pairs[J + col].index)
    return HilbertBoundReport(
        J=J,
        g_fit=g_fit,
        worst_pair=worst,
        g_fit_double=g_fit_double,
        bounded=g_fit_double <= growth_tol * g_fit,
    )


def one_sided_bound_check(
    config: MediumConfig, J: int, trials: int = 200, seed: int = 0
) -> tuple[float, float]:
    """
    Случайная проверка sum c_i c_j h_ij <= D sum c_i^2 (1 + |lambda_i|) с D = F + 2 pi G.

    F - максимум h_jj / (1 + |lambda_j|), G - подобранная константа из hilbert_bound_report,
    2 pi - константа неравенства Гильберта для индексов из Z.

    Returns:
        tuple: (D, наибольшее отношение левой части к правой).
    """
    pairs = spectrum(config, -J, J)
    gram = h_gram(config, pairs)
    growth = 1.0 + np.abs(np.array([p.lam for p in pairs]))
    diagonal_bound = float(np.max(np.diag(gram) / growth))
    d_constant = diagonal_bound + 2.0 * np.pi * hilbert_bound_report(config, J).g_fit

    rng = np.random.default_rng(seed)
    worst = -np.inf
    for _ in range(trials):
        size = int(rng.integers(1, min(2 * J, len(pairs)) + 1))
        support = rng.choice(len(pairs), size=size, replace=False)
        coefficients = np.zeros(len(pairs))
        coefficients[support] = rng.standard_normal(size)
        lhs = float(coefficients @ gram @ coefficients)
        rhs = d_constant * float(np.sum(coefficients**2 * growth))
        worst = max(worst, lhs / rhs)
    return d_constant, worst
