import math
from dataclasses import dataclass
from enum import Enum

from src.modules.helmholtz.domain.exceptions import ConfigError


class SignClass(str, Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    ZERO = "Zero"


@dataclass(frozen=True)
class MediumConfig:
    """
    Данные одномерной задачи -(sigma u')' - lambda c u = kappa u^3 на (a_-, a_+).

    Коэффициенты кусочно-постоянны: sigma_-, c_-, kappa_- на (a_-, 0)
    и sigma_+, c_+, kappa_+ на (0, a_+). Если kappa_minus / kappa_plus не заданы,
    на обеих подобластях используется kappa.

    Attributes:
        a_minus (float): Левый конец области, < 0.
        a_plus (float): Правый конец области, > 0.
        sigma_plus (float): Коэффициент диффузии на Omega_+, > 0.
        sigma_minus (float): Коэффициент диффузии на Omega_-, < 0.
        c_plus (float): Вес на Omega_+, > 0.
        c_minus (float): Вес на Omega_-, > 0.
        kappa (float): Коэффициент кубической нелинейности.
    """

    a_minus: float = -5.0
    a_plus: float = 5.0
    sigma_plus: float = 1.0
    sigma_minus: float = -2.0
    c_plus: float = 1.0
    c_minus: float = 1.0
    kappa: float = 1.0
    kappa_minus: float | None = None
    kappa_plus: float | None = None

    def __post_init__(self) -> None:
        values = (
            self.a_minus,
            self.a_plus,
            self.sigma_plus,
            self.sigma_minus,
            self.c_plus,
            self.c_minus,
            self.kappa,
        )
        if not all(math.isfinite(v) for v in values):
            raise ConfigError("Параметры среды должны быть конечными числами.")
        if not self.a_minus < 0 < self.a_plus:
            raise ConfigError(f"Нужно a_- < 0 < a_+, получено ({self.a_minus}, {self.a_plus}).")
        if not (self.sigma_plus > 0 and self.sigma_minus < 0):
            raise ConfigError("Нужно sigma_+ > 0 и sigma_- < 0.")
        if not (self.c_plus > 0 and self.c_minus > 0):
            raise ConfigError("Нужно c_+ > 0 и c_- > 0.")
        if not (math.isfinite(self.k_minus) and math.isfinite(self.k_plus)):
            raise ConfigError("Волновые числа k_+- должны быть конечными.")

    @property
    def k_minus(self) -> float:
        return math.sqrt(self.c_minus / abs(self.sigma_minus))

    @property
    def k_plus(self) -> float:
        return math.sqrt(self.c_plus / self.sigma_plus)

    @property
    def length_minus(self) -> float:
        return abs(self.a_minus)

    @property
    def length_plus(self) -> float:
        return self.a_plus

    @property
    def kappa_on_minus(self) -> float:
        return self.kappa if self.kappa_minus is None else self.kappa_minus

    @property
    def kappa_on_plus(self) -> float:
        return self.kappa if self.kappa_plus is None else self.kappa_plus

    @property
    def contrast_ratio(self) -> float:
        """sigma_+ a_- / (a_+ sigma_-), определяет знак lambda_0."""
        return self.sigma_plus * self.a_minus / (self.a_plus * self.sigma_minus)

    def with_sigma_minus(self, sigma_minus: float) -> "MediumConfig":
        return MediumConfig(
            a_minus=self.a_minus,
            a_plus=self.a_plus,
            sigma_plus=self.sigma_plus,
            sigma_minus=sigma_minus,
            c_plus=self.c_plus,
            c_minus=self.c_minus,
            kappa=self.kappa,
            kappa_minus=self.kappa_minus,
            kappa_plus=self.kappa_plus,
        )


@dataclass(frozen=True)
class EigenPair:
    """
    Полуаналитическая собственная пара (lambda_j, phi_j).

    phi_j задаётся формулами через tau = sqrt(|lambda|) и нормировкой alpha > 0,
    так что phi_j(0) = alpha.
    """

    index: int
    lam: float
    tau: float
    alpha: float
    sign_class: SignClass

    def __post_init__(self) -> None:
        if self.alpha <= 0:
            raise ValueError(f"alpha должна быть положительной, получено {self.alpha}")
        if self.tau < 0 or abs(self.tau * self.tau - abs(self.lam)) > 1e-12 * max(1.0, abs(self.lam)):
            raise ValueError(f"tau^2 != |lambda| для j={self.index}")
        expected = (
            SignClass.POSITIVE
            if self.lam > 0
            else SignClass.NEGATIVE
            if self.lam < 0
            else SignClass.ZERO
        )
        if expected is not self.sign_class:
            raise ValueError(f"Класс знака {self.sign_class} не совпадает со знаком lambda={self.lam}")
        if self.index >= 1 and self.sign_class is not SignClass.POSITIVE:
            raise ValueError("Для j >= 1 собственное значение положительно.")
        if self.index <= -1 and self.sign_class is not SignClass.NEGATIVE:
            raise ValueError("Для j <= -1 собственное значение отрицательно.")
