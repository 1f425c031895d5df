"""
Скалярные произведения собственных функций в замкнутой форме и их квадратурные аналоги.

E^pm_ij = int_{Omega_pm} phi_i' phi_j' dx вычисляется по формулам для пар sin/sinh/линейных
кусков. Из них собираются
    h(phi_i, phi_j) = sigma_+ E^+_ij + |sigma_-| E^-_ij   (скалярное произведение H),
    a(phi_i, phi_j) = sigma_+ E^+_ij - |sigma_-| E^-_ij   (равно lambda_i delta_ij).
"""

import numpy as np
from scipy.integrate import quad

from src.modules.helmholtz.domain.entities.medium import EigenPair, MediumConfig
from src.modules.helmholtz.domain.exceptions import NumericalError
from src.modules.helmholtz.infrastructure.services.spectral_1d.eigenpairs import (
    HYPERBOLIC,
    LINEAR,
    TRIG,
    _csch2,
    eigenfunction_derivative,
    eigenfunction_eval,
    side_kinds,
)

DISTINCT_TAU_TOL = 1e-9
QUAD_LIMIT = 1000


def _check_distinct(pairs: list[EigenPair]) -> None:
    for i, p in enumerate(pairs):
        for q in pairs[i + 1 :]:
            if p.index != q.index and p.sign_class is q.sign_class and abs(p.tau - q.tau) <= DISTINCT_TAU_TOL:
                raise NumericalError(
                    f"Совпадающие tau у разных собственных пар j={p.index}, j={q.index}"
                )


def _side_derivative_gram(kinds: np.ndarray, omegas: np.ndarray, length: float) -> np.ndarray:
    """int_0^L g_i'(y) g_j'(y) dy для g = sin(omega y)/sin(omega L), sinh(...)/sinh(...), y/L."""
    t = omegas * length
    trig = kinds == TRIG
    hyp = kinds == HYPERBOLIC
    lin = kinds == LINEAR

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        safe_t = np.where(lin, 1.0, t)
        cot = np.where(trig, np.cos(safe_t) / np.sin(safe_t), 0.0)
        coth = np.where(hyp, 1.0 / np.tanh(safe_t), 0.0)
        w = np.where(lin, 1.0, omegas)

        w_i, w_j = w[:, None], w[None, :]
        cot_i, cot_j = cot[:, None], cot[None, :]
        coth_i, coth_j = coth[:, None], coth[None, :]
        trig_i, trig_j = trig[:, None], trig[None, :]
        hyp_i, hyp_j = hyp[:, None], hyp[None, :]
        lin_any = lin[:, None] | lin[None, :]

        trig_trig = w_i * w_j * (w_i * cot_j - w_j * cot_i) / (w_i * w_i - w_j * w_j)
        hyp_hyp = w_i * w_j * (w_i * coth_j - w_j * coth_i) / (w_i * w_i - w_j * w_j)
        trig_hyp = w_i * w_j * (w_i * coth_j + w_j * cot_i) / (w_i * w_i + w_j * w_j)
        hyp_trig = w_i * w_j * (w_j * coth_i + w_i * cot_j) / (w_i * w_i + w_j * w_j)

        gram = np.select(
            [lin_any, trig_i & trig_j, hyp_i & hyp_j, trig_i & hyp_j, hyp_i & trig_j],
            [np.full_like(trig_trig, 1.0 / length), trig_trig, hyp_hyp, trig_hyp, hyp_trig],
        )

        sin_t = np.sin(safe_t)
        diag_trig = w * w * (length / (2.0 * sin_t * sin_t) + cot / (2.0 * w))
        diag_hyp = w * w * (0.5 * length * _csch2(safe_t) + coth / (2.0 * w))
    diagonal = np.select([lin, trig, hyp], [np.full_like(t, 1.0 / length), diag_trig, diag_hyp])
    np.fill_diagonal(gram, diagonal)
    # строгая симметрия: нижний треугольник копируется из верхнего
    return np.triu(gram) + np.triu(gram, 1).T


def _derivative_grams(config: MediumConfig, pairs: list[EigenPair]) -> tuple[np.ndarray, np.ndarray]:
    _check_distinct(pairs)
    kinds = np.array([side_kinds(p.sign_class) for p in pairs], dtype=int).reshape(-1, 2)
    taus = np.array([p.tau for p in pairs], dtype=float)
    alphas = np.array([p.alpha for p in pairs], dtype=float)
    scale = np.outer(alphas, alphas)

    minus = _side_derivative_gram(kinds[:, 0], taus * config.k_minus, config.length_minus)
    plus = _side_derivative_gram(kinds[:, 1], taus * config.k_plus, config.length_plus)
    return scale * minus, scale * plus


def h_gram(config: MediumConfig, pairs: list[EigenPair]) -> np.ndarray:
    """Матрица Грама G_ij = h(phi_i, phi_j) для списка пар (порядок сохраняется)."""
    minus, plus = _derivative_grams(config, pairs)
    return config.sigma_plus * plus + abs(config.sigma_minus) * minus


def stiffness_gram(config: MediumConfig, pairs: list[EigenPair]) -> np.ndarray:
    """a(phi_i, phi_j) = int sigma phi_i' phi_j'; для точных пар равно diag(lambda)."""
    minus, plus = _derivative_grams(config, pairs)
    return config.sigma_plus * plus - abs(config.sigma_minus) * minus


def _pair_entry(gram_fn, config: MediumConfig, p_i: EigenPair, p_j: EigenPair) -> float:
    if p_i.index == p_j.index:
        return float(gram_fn(config, [p_i])[0, 0])
    return float(gram_fn(config, [p_i, p_j])[0, 1])


def h_inner(config: MediumConfig, p_i: EigenPair, p_j: EigenPair) -> float:
    """
    h(phi_i, phi_j) = int |sigma| phi_i' phi_j' dx в замкнутой форме.

    Симметрична по аргументам точно (в арифметике с плавающей точкой).
    """
    return _pair_entry(h_gram, config, p_i, p_j)


def stiffness_inner(config: MediumConfig, p_i: EigenPair, p_j: EigenPair) -> float:
    return _pair_entry(stiffness_gram, config, p_i, p_j)


def _split_quad(integrand, config: MediumConfig, epsabs: float) -> float:
    total = 0.0
    for lo, hi in ((config.a_minus, 0.0), (0.0, config.a_plus)):
        value, _ = quad(integrand, lo, hi, epsabs=epsabs, epsrel=epsabs, limit=QUAD_LIMIT)
        total += value
    return total


def c_inner_quadrature(
    config: MediumConfig, p_i: EigenPair, p_j: EigenPair, epsabs: float = 1e-12
) -> float:
    """Адаптивная квадратура int c phi_i phi_j dx с разбиением в x = 0."""

    def integrand(x: float) -> float:
        weight = config.c_minus if x < 0 else config.c_plus
        return weight * float(eigenfunction_eval(p_i, config, x)) * float(eigenfunction_eval(p_j, config, x))

    return _split_quad(integrand, config, epsabs)


def h_inner_quadrature(
    config: MediumConfig, p_i: EigenPair, p_j: EigenPair, epsabs: float = 1e-12
) -> float:
    """Адаптивная квадратура int |sigma| phi_i' phi_j' dx."""

    def integrand(x: float) -> float:
        weight = abs(config.sigma_minus) if x < 0 else config.sigma_plus
        return weight * float(eigenfunction_derivative(p_i, config, x)) * float(
            eigenfunction_derivative(p_j, config, x)
        )

    return _split_quad(integrand, config, epsabs)


def a_inner_quadrature(
    config: MediumConfig, p_i: EigenPair, p_j: EigenPair, epsabs: float = 1e-12
) -> float:
    """Адаптивная квадратура int sigma phi_i' phi_j' dx."""

    def integrand(x: float) -> float:
        weight = config.sigma_minus if x < 0 else config.sigma_plus
        return weight * float(eigenfunction_derivative(p_i, config, x)) * float(
            eigenfunction_derivative(p_j, config, x)
        )

    return _split_quad(integrand, config, epsabs)
