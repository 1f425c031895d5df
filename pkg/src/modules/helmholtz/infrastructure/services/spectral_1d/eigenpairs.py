"""
Полуаналитические собственные пары одномерного оператора
-(sigma u')' = lambda c u с кусочно-постоянными sigma (меняет знак в x = 0) и c > 0.

Собственные функции выражаются через sin / sinh на каждой подобласти,
а lambda_j находится как единственный корень трансцендентного уравнения
непрерывности потока sigma phi' на интервале, известном заранее.
"""

import logging
import math

import numpy as np
from scipy.optimize import brentq

from src.modules.helmholtz.domain.entities.medium import EigenPair, MediumConfig, SignClass
from src.modules.helmholtz.domain.exceptions import (
    BracketError,
    DomainError,
    NumericalError,
)

logger = logging.getLogger(__name__)

ZERO_RATIO_TOL = 1e-12
ROOT_RTOL = 4 * np.finfo(float).eps
ROOT_XTOL_REL = 1e-14
SMALL_ARGUMENT = 1e-3

# тип кусочной формулы на подобласти
LINEAR, TRIG, HYPERBOLIC = 0, 1, 2


def classify_lambda0(config: MediumConfig) -> SignClass:
    """
    Знак lambda_0 по отношению sigma_+ a_- / (a_+ sigma_-).

    > 1 -> Positive, < 1 -> Negative, = 1 (с относительным допуском 1e-12) -> Zero.
    """
    ratio = config.contrast_ratio
    if abs(ratio - 1.0) < ZERO_RATIO_TOL:
        return SignClass.ZERO
    return SignClass.POSITIVE if ratio > 1.0 else SignClass.NEGATIVE


def _tanhc(s: np.ndarray | float) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    small = np.abs(s) < SMALL_ARGUMENT
    safe = np.where(small, 1.0, s)
    return np.where(small, 1.0 - s * s / 3.0, np.tanh(safe) / safe)


def _csch2(t: np.ndarray | float) -> np.ndarray:
    t = np.abs(np.asarray(t, dtype=float))
    return 4.0 * np.exp(-2.0 * t) / np.expm1(-2.0 * t) ** 2


def _flux_mismatch_positive(tau: float, config: MediumConfig) -> float:
    # (|sigma_-| k_- sin(theta) - sigma_+ k_+ tanh(s) cos(theta)) / tau, без полюсов tan
    kp, km = config.k_plus, config.k_minus
    lp, lm = config.length_plus, config.length_minus
    theta = tau * kp * lp
    s = tau * km * lm
    return float(
        abs(config.sigma_minus) * km * kp * lp * np.sinc(theta / math.pi)
        - config.sigma_plus * kp * km * lm * _tanhc(s) * math.cos(theta)
    )


def _flux_mismatch_negative(tau: float, config: MediumConfig) -> float:
    kp, km = config.k_plus, config.k_minus
    lp, lm = config.length_plus, config.length_minus
    theta = tau * km * lm
    s = tau * kp * lp
    return float(
        config.sigma_plus * kp * km * lm * np.sinc(theta / math.pi)
        - abs(config.sigma_minus) * km * kp * lp * _tanhc(s) * math.cos(theta)
    )


def _oscillation_scale(config: MediumConfig, sign_class: SignClass) -> float:
    """k L осциллирующей подобласти: Omega_+ для lambda > 0, Omega_- для lambda < 0."""
    if sign_class is SignClass.POSITIVE:
        return config.k_plus * config.length_plus
    return config.k_minus * config.length_minus


def _sign_class_for_index(config: MediumConfig, j: int) -> SignClass:
    if j >= 1:
        return SignClass.POSITIVE
    if j <= -1:
        return SignClass.NEGATIVE
    return classify_lambda0(config)


def tau_bracket(config: MediumConfig, j: int) -> tuple[float, float]:
    """Интервал для tau_j: tau k L в (|j| pi, (|j| + 1/2) pi) на осциллирующей стороне."""
    sign_class = _sign_class_for_index(config, j)
    if sign_class is SignClass.ZERO:
        return 0.0, 0.0
    scale = _oscillation_scale(config, sign_class)
    return abs(j) * math.pi / scale, (abs(j) + 0.5) * math.pi / scale


def eigenvalue_bracket(config: MediumConfig, j: int) -> tuple[float, float]:
    """
    Открытый интервал, содержащий ровно одно собственное значение lambda_j.

    Для j = 0 возвращается общий интервал (-pi^2/(4 k_-^2 a_-^2), pi^2/(4 k_+^2 a_+^2)).
    """
    if j == 0:
        scale_minus = config.k_minus * config.length_minus
        scale_plus = config.k_plus * config.length_plus
        return -((0.5 * math.pi / scale_minus) ** 2), (0.5 * math.pi / scale_plus) ** 2
    lo, hi = tau_bracket(config, j)
    if j > 0:
        return lo * lo, hi * hi
    return -(hi * hi), -(lo * lo)


def _trig_square_integral(omega: float, length: float) -> float:
    # int_0^L sin^2(omega y) dy / sin^2(omega L)
    t = omega * length
    if t < SMALL_ARGUMENT:
        return length * (1.0 / 3.0 + 2.0 * t * t / 45.0)
    s = math.sin(t)
    return length / (2.0 * s * s) - math.cos(t) / (2.0 * omega * s)


def _hyperbolic_square_integral(omega: float, length: float) -> float:
    # int_0^L sinh^2(omega y) dy / sinh^2(omega L)
    t = omega * length
    if t < SMALL_ARGUMENT:
        return length * (1.0 / 3.0 - 2.0 * t * t / 45.0)
    return 1.0 / (2.0 * omega * math.tanh(t)) - 0.5 * length * float(_csch2(t))


def side_kinds(sign_class: SignClass) -> tuple[int, int]:
    """Тип формулы (LINEAR / TRIG / HYPERBOLIC) на Omega_- и Omega_+."""
    if sign_class is SignClass.POSITIVE:
        return HYPERBOLIC, TRIG
    if sign_class is SignClass.NEGATIVE:
        return TRIG, HYPERBOLIC
    return LINEAR, LINEAR


def normalization_alpha(config: MediumConfig, tau: float, sign_class: SignClass) -> float:
    """
    Нормировка alpha > 0, при которой ||phi||_c = 1.

    Args:
        config (MediumConfig): Данные задачи.
        tau (float): sqrt(|lambda|); игнорируется для класса Zero.
        sign_class (SignClass): Класс знака собственного значения.

    Returns:
        float: alpha.
    """
    if sign_class is SignClass.ZERO:
        return math.sqrt(3.0 / (config.c_plus * config.length_plus + config.c_minus * config.length_minus))
    if tau <= 0:
        raise DomainError(f"Для класса {sign_class.value} нужно tau > 0, получено {tau}")

    squares = {TRIG: _trig_square_integral, HYPERBOLIC: _hyperbolic_square_integral}
    kind_minus, kind_plus = side_kinds(sign_class)
    norm_sq = config.c_minus * squares[kind_minus](
        tau * config.k_minus, config.length_minus
    ) + config.c_plus * squares[kind_plus](tau * config.k_plus, config.length_plus)
    return 1.0 / math.sqrt(norm_sq)


def solve_eigenvalue(config: MediumConfig, j: int) -> EigenPair:
    """
    Решает трансцендентное уравнение для lambda_j на его интервале.

    Для j >= 1 корень ищется при tau k_+ a_+ в (j pi, (j + 1/2) pi), для j <= -1 при
    tau k_- |a_-| в (|j| pi, (|j| + 1/2) pi), для j = 0 на (0, pi/2) со стороны,
    выбранной classify_lambda0. В случае Zero возвращается lambda_0 = 0 без поиска корня.

    Raises:
        BracketError: Если на интервале нет смены знака (ошибка в коде, а не в математике).
    """
    j = int(j)
    sign_class = _sign_class_for_index(config, j)
    if sign_class is SignClass.ZERO:
        alpha = normalization_alpha(config, 0.0, SignClass.ZERO)
        return EigenPair(index=0, lam=0.0, tau=0.0, alpha=alpha, sign_class=SignClass.ZERO)

    mismatch = (
        _flux_mismatch_positive if sign_class is SignClass.POSITIVE else _flux_mismatch_negative
    )
    lo, hi = tau_bracket(config, j)
    f_lo, f_hi = mismatch(lo, config), mismatch(hi, config)
    if not f_lo * f_hi < 0:
        raise BracketError(j, lo, hi)

    tau = brentq(
        mismatch,
        lo,
        hi,
        args=(config,),
        xtol=ROOT_XTOL_REL * hi,
        rtol=ROOT_RTOL,
        maxiter=200,
    )
    lam = tau * tau if sign_class is SignClass.POSITIVE else -tau * tau
    alpha = normalization_alpha(config, tau, sign_class)
    logger.debug("j=%d: lambda=%.15g tau=%.15g alpha=%.6g", j, lam, tau, alpha)
    return EigenPair(index=j, lam=lam, tau=tau, alpha=alpha, sign_class=sign_class)


def eigen_equation_quotient(config: MediumConfig, pair: EigenPair) -> float:
    """Левая часть трансцендентного уравнения (равна 1 в корне)."""
    tau = pair.tau
    kp, km = config.k_plus, config.k_minus
    if pair.sign_class is SignClass.POSITIVE:
        return (
            math.tan(tau * kp * config.a_plus)
            / math.tanh(tau * km * config.a_minus)
            * (config.sigma_minus * km)
            / (config.sigma_plus * kp)
        )
    if pair.sign_class is SignClass.NEGATIVE:
        return (
            math.tan(tau * km * config.a_minus)
            / math.tanh(tau * kp * config.a_plus)
            * (config.sigma_plus * kp)
            / (config.sigma_minus * km)
        )
    raise DomainError("Для lambda_0 = 0 трансцендентное уравнение не используется.")


def side_omegas(config: MediumConfig, pair: EigenPair) -> tuple[float, float]:
    return pair.tau * config.k_minus, pair.tau * config.k_plus


def _piece_values(kind: int, omega: float, length: float, y: np.ndarray, alpha: float) -> np.ndarray:
    if kind == LINEAR:
        return alpha * y / length
    if kind == TRIG:
        return alpha * np.sin(omega * y) / math.sin(omega * length)
    return (
        alpha
        * np.exp(omega * (y - length))
        * np.expm1(-2.0 * omega * y)
        / math.expm1(-2.0 * omega * length)
    )


def _piece_slopes(kind: int, omega: float, length: float, y: np.ndarray, alpha: float) -> np.ndarray:
    # производная по y - расстоянию от внешнего конца подобласти
    if kind == LINEAR:
        return np.full_like(y, alpha / length)
    if kind == TRIG:
        return alpha * omega * np.cos(omega * y) / math.sin(omega * length)
    return (
        -alpha
        * omega
        * np.exp(omega * (y - length))
        * (1.0 + np.exp(-2.0 * omega * y))
        / math.expm1(-2.0 * omega * length)
    )


def _checked_points(config: MediumConfig, x: np.ndarray | float) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    slack = 1e-12 * max(config.length_minus, config.length_plus)
    if np.any(x < config.a_minus - slack) or np.any(x > config.a_plus + slack):
        raise DomainError(f"Точка вне [{config.a_minus}, {config.a_plus}]")
    return np.clip(x, config.a_minus, config.a_plus)


def eigenfunction_eval(pair: EigenPair, config: MediumConfig, x: np.ndarray | float) -> np.ndarray:
    """
    Значение phi_j(x) с соглашением alpha_j > 0 (так что phi_j(0) = alpha_j).

    На концах a_- и a_+ значение равно нулю точно.
    """
    x = _checked_points(config, x)
    kind_minus, kind_plus = side_kinds(pair.sign_class)
    omega_minus, omega_plus = side_omegas(config, pair)

    y_minus = np.where(x < 0, x - config.a_minus, config.length_minus)
    y_plus = np.where(x >= 0, config.a_plus - x, config.length_plus)
    with np.errstate(over="ignore", invalid="ignore"):
        left = _piece_values(kind_minus, omega_minus, config.length_minus, y_minus, pair.alpha)
        right = _piece_values(kind_plus, omega_plus, config.length_plus, y_plus, pair.alpha)
    return np.where(x < 0, left, right)


def eigenfunction_derivative(
    pair: EigenPair, config: MediumConfig, x: np.ndarray | float
) -> np.ndarray:
    """phi_j'(x); в точке x = 0 берётся предел справа."""
    x = _checked_points(config, x)
    kind_minus, kind_plus = side_kinds(pair.sign_class)
    omega_minus, omega_plus = side_omegas(config, pair)

    y_minus = np.where(x < 0, x - config.a_minus, config.length_minus)
    y_plus = np.where(x >= 0, config.a_plus - x, config.length_plus)
    with np.errstate(over="ignore", invalid="ignore"):
        left = _piece_slopes(kind_minus, omega_minus, config.length_minus, y_minus, pair.alpha)
        right = -_piece_slopes(kind_plus, omega_plus, config.length_plus, y_plus, pair.alpha)
    return np.where(x < 0, left, right)


def interface_fluxes(pair: EigenPair, config: MediumConfig) -> tuple[float, float]:
    """(sigma_- phi'(0^-), sigma_+ phi'(0^+)) по замкнутым формулам."""
    kind_minus, kind_plus = side_kinds(pair.sign_class)
    omega_minus, omega_plus = side_omegas(config, pair)
    at_minus = np.array([config.length_minus])
    at_plus = np.array([config.length_plus])
    slope_minus = _piece_slopes(kind_minus, omega_minus, config.length_minus, at_minus, pair.alpha)
    slope_plus = -_piece_slopes(kind_plus, omega_plus, config.length_plus, at_plus, pair.alpha)
    return float(config.sigma_minus * slope_minus[0]), float(config.sigma_plus * slope_plus[0])


def count_interior_zeros_analytic(pair: EigenPair, config: MediumConfig) -> tuple[int, int]:
    """
    Число внутренних нулей phi_j на Omega_- и Omega_+.

    Нули есть только у синусоидального куска: sin(omega y) = 0 при y = n pi / omega,
    n = 1..floor(omega L / pi), и omega L не кратно pi в корне уравнения.
    """
    kind_minus, kind_plus = side_kinds(pair.sign_class)
    omega_minus, omega_plus = side_omegas(config, pair)

    def zeros(kind: int, omega: float, length: float) -> int:
        if kind != TRIG:
            return 0
        return int(math.floor(omega * length / math.pi))

    return (
        zeros(kind_minus, omega_minus, config.length_minus),
        zeros(kind_plus, omega_plus, config.length_plus),
    )


def spectrum(config: MediumConfig, j_min: int, j_max: int) -> list[EigenPair]:
    """
    Собственные пары для j_min <= j <= j_max в порядке возрастания lambda_j.

    Raises:
        NumericalError: Если найденные значения не возрастают строго.
    """
    if j_min > j_max:
        raise DomainError(f"Нужно j_min <= j_max, получено {j_min} > {j_max}")
    pairs = [solve_eigenvalue(config, j) for j in range(j_min, j_max + 1)]
    lams = np.array([p.lam for p in pairs])
    if np.any(np.diff(lams) <= 0):
        raise NumericalError("Собственные значения не возрастают строго по индексу.")
    return pairs


def tau_asymptotic(config: MediumConfig, j: int) -> float:
    """
    Двучленная асимптотика tau_j при |j| -> infinity.

    tau_j ~ (j pi + arctan(sigma_+ k_+ / (|sigma_-| k_-))) / (k_+ a_+) для j >= 1,
    tau_j ~ (|j| pi + arctan(|sigma_-| k_- / (sigma_+ k_+))) / (k_- |a_-|) для j <= -1.
    """
    if j == 0:
        raise DomainError("Асимптотика определена только для |j| >= 1.")
    flux_plus = config.sigma_plus * config.k_plus
    flux_minus = abs(config.sigma_minus) * config.k_minus
    if j > 0:
        return (j * math.pi + math.atan(flux_plus / flux_minus)) / (config.k_plus * config.length_plus)
    return (abs(j) * math.pi + math.atan(flux_minus / flux_plus)) / (
        config.k_minus * config.length_minus
    )


def _side_indices(config: MediumConfig, Lambda: float, sign: int):
    j = 1
    while True:
        lo, hi = tau_bracket(config, sign * j)
        if lo * lo > Lambda:
            return
        yield sign * j, hi * hi
        j += 1


def eigenpairs_within(config: MediumConfig, Lambda: float) -> list[EigenPair]:
    """Все собственные пары с |lambda_j| <= Lambda, по возрастанию j."""
    pairs = []
    for sign in (-1, 1):
        for j, _ in _side_indices(config, Lambda, sign):
            pair = solve_eigenvalue(config, j)
            if abs(pair.lam) <= Lambda:
                pairs.append(pair)
    zero = solve_eigenvalue(config, 0)
    if abs(zero.lam) <= Lambda:
        pairs.append(zero)
    return sorted(pairs, key=lambda p: p.index)


def weyl_count(config: MediumConfig, Lambda: float) -> int:
    """
    Число собственных значений в [-Lambda, Lambda].

    Корень решается только когда Lambda попадает внутрь интервала lambda_j;
    иначе принадлежность определяется границами интервала.
    """
    if Lambda < 1:
        raise DomainError(f"Нужно Lambda >= 1, получено {Lambda}")
    count = 0
    for sign in (-1, 1):
        for j, upper in _side_indices(config, Lambda, sign):
            if upper <= Lambda or abs(solve_eigenvalue(config, j).lam) <= Lambda:
                count += 1
    if abs(solve_eigenvalue(config, 0).lam) <= Lambda:
        count += 1
    return count


def weyl_slope(config: MediumConfig) -> float:
    """Предельный наклон count(Lambda) / sqrt(Lambda) = (k_+ a_+ + k_- |a_-|) / pi."""
    return (config.k_plus * config.length_plus + config.k_minus * config.length_minus) / math.pi


def weyl_constant(config: MediumConfig, lambdas: list[float]) -> float:
    """Подобранная константа M: count(Lambda) <= M sqrt(Lambda) на всей выборке."""
    return max(weyl_count(config, lam) / math.sqrt(lam) for lam in lambdas)


def growth_constant(config: MediumConfig, j_max: int) -> float:
    """Подобранная константа m: 1 + |lambda_j| >= m (1 + |j|)^2 для |j| <= j_max."""
    pairs = spectrum(config, -j_max, j_max)
    return min((1.0 + abs(p.lam)) / (1.0 + abs(p.index)) ** 2 for p in pairs)
