from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class BranchStatus(str, Enum):
    MAX_STEPS = "MaxSteps"
    DIVERGED = "Diverged"
    RETURNED_TO_TRIVIAL = "ReturnedToTrivial"
    LEFT_WINDOW = "LeftWindow"


@dataclass(frozen=True)
class BranchPoint:
    """
    Принятая точка ветви решений (u, lambda) дискретного кубического уравнения.

    Attributes:
        lam (float): Значение параметра lambda.
        u (np.ndarray): Коэффициенты P1-решения во внутренних узлах.
        l2c_norm (float): ||u||_c.
        h_norm (float): ||u||_H = sqrt(u^T A_|sigma| u).
        energy (float): Psi_lambda(u).
        zeros_minus (int): Число внутренних нулей на Omega_-.
        zeros_plus (int): Число внутренних нулей на Omega_+.
        monotone_minus (bool): Монотонность на замыкании Omega_-.
        monotone_plus (bool): Монотонность на замыкании Omega_+.
        plateau (float | None): Значение плато на Omega_-, если оно есть.
        residual_norm (float): ||F(u, lambda)|| в момент принятия.
    """

    lam: float
    u: np.ndarray
    l2c_norm: float
    h_norm: float
    energy: float
    zeros_minus: int
    zeros_plus: int
    monotone_minus: bool
    monotone_plus: bool
    plateau: float | None
    residual_norm: float
    half_widths: tuple[float, ...] = ()

    @property
    def nodal_pattern(self) -> tuple[int, int, bool, bool]:
        return self.zeros_minus, self.zeros_plus, self.monotone_minus, self.monotone_plus


@dataclass
class Branch:
    """Ветвь C_j: упорядоченные точки продолжения от точки бифуркации lambda_j."""

    seed_index: int
    points: list[BranchPoint] = field(default_factory=list)
    status: BranchStatus = BranchStatus.MAX_STEPS
    message: str = ""

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([p.lam for p in self.points])

    @property
    def norms(self) -> np.ndarray:
        return np.array([p.l2c_norm for p in self.points])

    def nodal_pattern_is_constant(self) -> bool:
        """Числа нулей и флаги монотонности совпадают во всех точках ветви."""
        return len({p.nodal_pattern for p in self.points}) <= 1
