"""
Продолжение по псевдодлине дуги нетривиальных ветвей, ответвляющихся от (0, lambda_j).

Посев: u = s phi_j (интерполянт), lambda = lambda_j - s^2 int kappa phi_j^4, затем
ньютоновская коррекция при фиксированной амплитуде <u, phi_j>_c = s.
Далее: предиктор по секущей (первый шаг по касательной (phi_j, -2 s beta)),
корректор Ньютона на окаймлённой системе [F(u, lambda); условие длины дуги].
"""

import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.sparse
from scipy.sparse.linalg import MatrixRankWarning, spsolve
from sklearn.linear_model import LinearRegression

from src.modules.helmholtz.domain.entities.branch import Branch, BranchPoint, BranchStatus
from src.modules.helmholtz.domain.entities.medium import EigenPair, MediumConfig
from src.modules.helmholtz.domain.entities.mesh import Mesh
from src.modules.helmholtz.domain.exceptions import BorderedSystemError, ContinuationError
from src.modules.helmholtz.infrastructure.services.continuation.diagnostics import (
    count_interior_zeros,
    extremum_half_widths,
    plateau_value,
)
from src.modules.helmholtz.infrastructure.services.continuation.nonlinear_form import (
    energy,
    jacobian,
    quartic,
    residual,
)
from src.modules.helmholtz.infrastructure.services.fem.assembly import FemMatrices
from src.modules.helmholtz.infrastructure.services.spectral_1d.eigenpairs import (
    eigenfunction_eval,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ContinuationSettings:
    """
    Параметры продолжения.

    Attributes:
        newton_tol (float): Допуск ||F|| <= newton_tol (1 + ||u||).
        max_newton (int): Максимум итераций Ньютона на шаг.
        lambda_min (float): Нижняя граница окна по lambda.
        lambda_max (float): Верхняя граница окна по lambda.
        trivial_threshold (float): Порог ||u||_c возврата к тривиальной ветви.
        divergence_threshold (float): Порог ||u||_c расходимости.
        max_seed_halvings (int): Сколько раз можно уменьшить амплитуду посева.
    """

    newton_tol: float = 1e-10
    max_newton: int = 25
    lambda_min: float = -10.0
    lambda_max: float = 15.0
    trivial_threshold: float = 1e-6
    divergence_threshold: float = 1e6
    max_seed_halvings: int = 5
    easy_iterations: int = 3
    easy_steps_to_grow: int = 3
    growth_factor: float = 1.3


@dataclass(frozen=True)
class SeedPoint:
    """Сошедшаяся точка посева и данные для первой касательной."""

    point: BranchPoint
    pair: EigenPair
    direction: np.ndarray
    amplitude: float
    beta: float


class _NewtonFailure(Exception):
    pass


class _SingularSystem(Exception):
    pass


class BranchTracer(object):
    """
    Построение ветвей C_j дискретного уравнения -(sigma u')' - lambda c u = kappa u^3.

    Attributes:
        config (MediumConfig): Данные задачи.
        mesh (Mesh): Сетка с узлом в x = 0.
        matrices (FemMatrices): Собранные матрицы этой сетки.
        settings (ContinuationSettings): Допуски и политика шага.
    """

    def __init__(
        self,
        config: MediumConfig,
        mesh: Mesh,
        matrices: FemMatrices,
        settings: ContinuationSettings | None = None,
    ):
        self.config = config
        self.mesh = mesh
        self.matrices = matrices
        self.settings = settings or ContinuationSettings()

    def c_norm(self, u: np.ndarray) -> float:
        return math.sqrt(max(self.matrices.mass.quadratic_form(u), 0.0))

    def make_point(self, u: np.ndarray, lam: float) -> BranchPoint:
        """Точка ветви со всеми диагностиками."""
        zeros_minus, zeros_plus, monotone_minus, monotone_plus = count_interior_zeros(self.mesh, u)
        plateau = plateau_value(self.config, self.mesh, u, lam)
        return BranchPoint(
            lam=float(lam),
            u=np.array(u, dtype=float),
            l2c_norm=self.c_norm(u),
            h_norm=math.sqrt(max(self.matrices.stiffness_abs.quadratic_form(u), 0.0)),
            energy=energy(self.mesh, self.matrices, u, lam),
            zeros_minus=zeros_minus,
            zeros_plus=zeros_plus,
            monotone_minus=monotone_minus,
            monotone_plus=monotone_plus,
            plateau=None if plateau is None else plateau[0],
            residual_norm=float(np.linalg.norm(residual(self.mesh, self.matrices, u, lam))),
            half_widths=extremum_half_widths(self.mesh, u),
        )

    def _newton(self, u: np.ndarray, lam: float, constraint) -> tuple[np.ndarray, float, int]:
        """
        Ньютон на окаймлённой системе [[F_u, F_lambda], [row_u, row_lambda]].

        constraint(u, lam) возвращает (g, row_u, row_lambda) скалярного условия g = 0.
        """
        tol = self.settings.newton_tol
        mass = self.matrices.mass
        for iteration in range(self.settings.max_newton + 1):
            f = residual(self.mesh, self.matrices, u, lam)
            g, row_u, row_lam = constraint(u, lam)
            scale = 1.0 + float(np.linalg.norm(u))
            if not (np.all(np.isfinite(f)) and math.isfinite(g)):
                raise _NewtonFailure("нечисловая невязка")
            if np.linalg.norm(f) <= tol * scale and abs(g) <= tol * scale:
                return u, lam, iteration
            if iteration == self.settings.max_newton:
                break

            f_lam = scipy.sparse.csc_matrix(-(mass @ u).reshape(-1, 1))
            bordered = scipy.sparse.bmat(
                [
                    [jacobian(self.mesh, self.matrices, u, lam).to_sparse(), f_lam],
                    [scipy.sparse.csr_matrix(row_u.reshape(1, -1)), scipy.sparse.csr_matrix([[row_lam]])],
                ],
                format="csc",
            )
            with warnings.catch_warnings():
                warnings.simplefilter("error", MatrixRankWarning)
                try:
                    delta = spsolve(bordered, -np.append(f, g))
                except MatrixRankWarning as exc:
                    raise _SingularSystem(str(exc)) from exc
            if not np.all(np.isfinite(delta)):
                raise _SingularSystem("нечисловое решение окаймлённой системы")
            u = u + delta[:-1]
            lam = lam + float(delta[-1])
        raise _NewtonFailure(f"нет сходимости за {self.settings.max_newton} итераций")

    def _solve_seed(self, phi: np.ndarray, lam_j: float, beta: float, s: float) -> tuple[np.ndarray, float]:
        c_phi = self.matrices.mass @ phi

        def amplitude(u: np.ndarray, lam: float):
            return float(c_phi @ u) - s, c_phi, 0.0

        u, lam, _ = self._newton(s * phi, lam_j - s * s * beta, amplitude)
        return u, lam

    def branch_seed(self, pair: EigenPair, amplitude: float = 1e-2) -> SeedPoint:
        """
        Сошедшаяся точка вблизи (0, lambda_j) с амплитудой <u, phi_j>_c = s.

        При отказе Ньютона s уменьшается вдвое (не более max_seed_halvings раз).
        Решение для -s проверяется на нечётность и не сохраняется.

        Raises:
            ContinuationError: Посев не сошёлся или решения для +-s не симметричны.
        """
        phi = self.mesh.interpolate(lambda x: eigenfunction_eval(pair, self.config, x))
        beta = quartic(self.mesh, self.matrices, phi)
        s = amplitude
        for attempt in range(self.settings.max_seed_halvings + 1):
            try:
                u, lam = self._solve_seed(phi, pair.lam, beta, s)
                mirror_u, mirror_lam = self._solve_seed(phi, pair.lam, beta, -s)
                break
            except (_NewtonFailure, _SingularSystem) as exc:
                logger.debug("Посев j=%d, s=%.3g не сошёлся: %s", pair.index, s, exc)
                s *= 0.5
        else:
            raise ContinuationError(f"Посев ветви j={pair.index} не сошёлся")

        norm = float(np.linalg.norm(u))
        if np.linalg.norm(u + mirror_u) > 1e-6 * norm or abs(lam - mirror_lam) > 1e-8 * (1.0 + abs(lam)):
            raise ContinuationError(f"Решения для +s и -s у ветви j={pair.index} не симметричны")

        logger.info("Посев j=%d: s=%.3g, lambda=%.10g (lambda_j=%.10g)", pair.index, s, lam, pair.lam)
        return SeedPoint(point=self.make_point(u, lam), pair=pair, direction=phi, amplitude=s, beta=beta)

    def step_length(self, point: BranchPoint, u: np.ndarray, lam: float) -> float:
        """Длина шага в норме sqrt(||du||_c^2 + dlambda^2)."""
        return math.sqrt(self.c_norm(u - point.u) ** 2 + (lam - point.lam) ** 2)

    def _normalized(self, du: np.ndarray, dlam: float) -> tuple[np.ndarray, float]:
        length = math.sqrt(self.c_norm(du) ** 2 + dlam * dlam)
        return du / length, dlam / length

    def continue_branch(self, seed: SeedPoint, steps: int, ds: float = 0.1) -> Branch:
        """
        Псевдо-дуговое продолжение от точки посева.

        Шаг уменьшается вдвое при отказе корректора и растёт в 1.3 раза после трёх
        лёгких шагов подряд, оставаясь в [ds/64, 8 ds]. Соседние точки ветви отстоят
        друг от друга не больше чем на 8 ds.

        Raises:
            BorderedSystemError: Вырожденная окаймлённая система (точка поворота или
                ветвления); частичная ветвь передаётся в исключении.
        """
        settings = self.settings
        branch = Branch(seed_index=seed.pair.index, points=[seed.point])
        ds_min, ds_max = ds / 64.0, 8.0 * ds
        step_size = ds
        easy_streak = 0

        tangent_u, tangent_lam = self._normalized(
            seed.direction, -2.0 * seed.amplitude * seed.beta
        )
        current = seed.point

        for step in range(1, steps + 1):
            while True:
                u_pred = current.u + step_size * tangent_u
                lam_pred = current.lam + step_size * tangent_lam
                c_tangent = self.matrices.mass @ tangent_u
                base_u, base_lam, size = current.u, current.lam, step_size

                def arclength(u: np.ndarray, lam: float):
                    g = float(c_tangent @ (u - base_u)) + tangent_lam * (lam - base_lam) - size
                    return g, c_tangent, tangent_lam

                try:
                    u, lam, iterations = self._newton(u_pred, lam_pred, arclength)
                    length = self.step_length(current, u, lam)
                    if length > ds_max:
                        raise _NewtonFailure(f"корректор ушёл на {length:.3g} > 8 ds")
                    break
                except _SingularSystem as exc:
                    branch.status = BranchStatus.DIVERGED
                    branch.message = str(exc)
                    raise BorderedSystemError(step, current.lam, partial=branch) from exc
                except _NewtonFailure as exc:
                    step_size *= 0.5
                    easy_streak = 0
                    logger.debug("Шаг %d: %s, ds -> %.3g", step, exc, step_size)
                    if step_size < ds_min:
                        branch.status = BranchStatus.DIVERGED
                        branch.message = f"шаг меньше ds/64 на lambda={current.lam:.6g}"
                        return branch

            if not settings.lambda_min <= lam <= settings.lambda_max:
                branch.status = BranchStatus.LEFT_WINDOW
                branch.message = f"lambda={lam:.6g} вне [{settings.lambda_min}, {settings.lambda_max}]"
                return branch

            point = self.make_point(u, lam)
            if point.l2c_norm > settings.divergence_threshold:
                branch.status = BranchStatus.DIVERGED
                branch.message = f"||u||_c = {point.l2c_norm:.3g}"
                return branch

            tangent_u, tangent_lam = self._normalized(u - current.u, lam - current.lam)
            branch.points.append(point)
            current = point

            if point.l2c_norm < settings.trivial_threshold:
                branch.status = BranchStatus.RETURNED_TO_TRIVIAL
                return branch

            easy_streak = easy_streak + 1 if iterations <= settings.easy_iterations else 0
            if easy_streak >= settings.easy_steps_to_grow:
                step_size = min(step_size * settings.growth_factor, ds_max)
                easy_streak = 0

        branch.status = BranchStatus.MAX_STEPS
        logger.info(
            "Ветвь j=%d: %d точек, lambda от %.6g до %.6g",
            branch.seed_index,
            len(branch.points),
            branch.points[0].lam,
            branch.points[-1].lam,
        )
        return branch

    def amplitude_law_fit(
        self, pair: EigenPair, amplitudes: tuple[float, ...] = (0.02, 0.04, 0.06)
    ) -> tuple[float, float, float]:
        """
        Восстановление beta в lambda(s) = lambda_j - beta s^2 по сошедшимся точкам.

        Returns:
            tuple: (beta по МНК, beta = int kappa phi_j^4, относительная ошибка).
        """
        phi = self.mesh.interpolate(lambda x: eigenfunction_eval(pair, self.config, x))
        beta = quartic(self.mesh, self.matrices, phi)
        lams = []
        for s in amplitudes:
            try:
                _, lam = self._solve_seed(phi, pair.lam, beta, s)
            except (_NewtonFailure, _SingularSystem) as exc:
                raise ContinuationError(f"Точка с амплитудой s={s} для j={pair.index} не сошлась") from exc
            lams.append(lam)

        squares = np.asarray(amplitudes, dtype=float).reshape(-1, 1) ** 2
        model = LinearRegression().fit(squares, np.asarray(lams))
        fitted = -float(model.coef_[0])
        return fitted, beta, abs(fitted - beta) / abs(beta)


def verify_point(mesh: Mesh, matrices: FemMatrices, u: np.ndarray, lam: float) -> float:
    """Относительная невязка ||F(u, lambda)|| / (1 + ||u||) для повторной проверки точки."""
    u = np.asarray(u, dtype=float)
    return float(np.linalg.norm(residual(mesh, matrices, u, lam)) / (1.0 + np.linalg.norm(u)))
