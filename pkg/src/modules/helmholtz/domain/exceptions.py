class HelmholtzError(Exception):
    """Базовая ошибка вычислительного модуля."""


class ConfigError(HelmholtzError, ValueError):
    """Некорректные параметры задачи или файла конфигурации."""


class DomainError(HelmholtzError, ValueError):
    """Аргумент вне области определения (точка вне [a_-, a_+], m вне диапазона)."""


class MeshError(HelmholtzError, ValueError):
    """Вырожденная сетка или сетка без узла на интерфейсе x = 0."""


class NumericalError(HelmholtzError):
    """Численный метод не достиг заданной точности."""


class BracketError(NumericalError):
    """На интервале из леммы о нумерации нет смены знака."""

    def __init__(self, j: int, lo: float, hi: float):
        super().__init__(f"Нет смены знака для j={j} на интервале tau in ({lo:.6g}, {hi:.6g})")
        self.j = j
        self.lo = lo
        self.hi = hi


class CholeskyError(NumericalError):
    """Матрица масс (правая часть пучка) не положительно определена."""


class EigenIterationError(NumericalError):
    """Итерация для трёхдиагональной задачи не сошлась."""


class EigenResidualError(NumericalError):
    """Невязка или C-ортонормированность собственных векторов хуже допуска."""


class MatchingError(NumericalError):
    """Аналитическому собственному значению не нашлось дискретной пары."""

    def __init__(self, j: int, lam: float, nearest: float | None):
        super().__init__(
            f"Нет дискретного собственного значения для j={j} (lambda={lam:.10g}), "
            f"ближайшее: {nearest}"
        )
        self.j = j
        self.lam = lam
        self.nearest = nearest


class ContinuationError(NumericalError):
    """Ошибка продолжения ветви (посев, нечётность, невязка)."""


class BorderedSystemError(ContinuationError):
    """Вырожденная окаймлённая система: точка поворота или ветвления."""

    def __init__(self, step: int, lam: float, partial=None):
        super().__init__(f"Вырожденная окаймлённая система на шаге {step}, lambda={lam:.10g}")
        self.step = step
        self.lam = lam
        self.partial = partial
