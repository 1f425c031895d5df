from dataclasses import dataclass
from enum import Enum


class WeightMode(str, Enum):
    """Режим нормировки; "appendix" и "section5" принимаются как прежние имена growth и shifted."""

    GROWTH = "growth"
    SHIFTED = "shifted"

    @classmethod
    def _missing_(cls, value):
        aliases = {"appendix": cls.GROWTH, "section5": cls.SHIFTED}
        if isinstance(value, str):
            return aliases.get(value.strip().lower())
        return None


@dataclass(frozen=True)
class GramConfig:
    """
    Способ нормировки матрицы Грама собственных функций в H-скалярном произведении.

    growth: веса 1 + |lambda_j|;
    shifted: веса |lambda_j - lambda_ref|, индексы с lambda_j = lambda_ref получают вес 1.
    """

    weight_mode: WeightMode = WeightMode.GROWTH
    lambda_ref: float = 0.0
    coincidence_tol: float = 1e-12
