from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EigResult:
    """
    Результат обобщённой задачи A v = lambda C v.

    Attributes:
        eigenvalues (np.ndarray): Собственные значения по возрастанию.
        eigenvectors (np.ndarray): C-ортонормированные столбцы в том же порядке.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def size(self) -> int:
        return self.eigenvalues.size


@dataclass(frozen=True)
class EigenMatch:
    """Сопоставление аналитического lambda_j дискретному собственному значению."""

    index: int
    analytic: float
    discrete: float
    discrete_position: int

    @property
    def relative_error(self) -> float:
        return abs(self.discrete - self.analytic) / max(abs(self.analytic), 1e-300)
