import logging

import numpy as np
import scipy.linalg

from src.modules.helmholtz.domain.entities.band_matrix import SymBandMatrix
from src.modules.helmholtz.domain.entities.eig_result import EigResult
from src.modules.helmholtz.domain.exceptions import (
    CholeskyError,
    EigenIterationError,
    EigenResidualError,
)

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-10


def _as_dense(matrix: SymBandMatrix | np.ndarray) -> np.ndarray:
    if isinstance(matrix, SymBandMatrix):
        return matrix.to_dense()
    return np.asarray(matrix, dtype=float)


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Компонента наибольшего модуля каждого столбца делается положительной."""
    if vectors.size == 0:
        return vectors
    rows = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[rows, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def _check_result(a: np.ndarray, c: np.ndarray, values: np.ndarray, vectors: np.ndarray, tol: float) -> None:
    if values.size == 0:
        return
    norm_a = np.linalg.norm(a, ord=np.inf)
    norm_c = np.linalg.norm(c, ord=np.inf)
    c_vectors = c @ vectors
    residual = np.linalg.norm(a @ vectors - c_vectors * values, axis=0)
    bound = tol * (norm_a + np.abs(values) * norm_c) * np.linalg.norm(vectors, axis=0)
    worst = int(np.argmax(residual / bound))
    if residual[worst] > bound[worst]:
        raise EigenResidualError(
            f"Невязка {residual[worst]:.3e} для lambda={values[worst]:.10g} превышает {bound[worst]:.3e}"
        )
    gram = vectors.T @ c_vectors
    deviation = float(np.max(np.abs(gram - np.eye(values.size))))
    if deviation > tol:
        raise EigenResidualError(f"Отклонение от C-ортонормированности {deviation:.3e}")


def generalized_sym_eig(
    a: SymBandMatrix | np.ndarray,
    c: SymBandMatrix | np.ndarray,
    subset_by_value: tuple[float, float] | None = None,
    subset_by_index: tuple[int, int] | None = None,
    tol: float = RESIDUAL_TOL,
) -> EigResult:
    """
    Обобщённая симметричная задача A v = lambda C v с C > 0.

    Пучок сводится к стандартной задаче L^-1 A L^-T через разложение Холецкого C = L L^T,
    затем решается LAPACK-процедурой для симметричных матриц. Каждое решение
    проверяется на невязку и C-ортонормированность.

    Args:
        a: Симметричная (возможно знаконеопределённая) матрица.
        c: Симметричная положительно определённая матрица.
        subset_by_value: Полуинтервал (lo, hi] значений, если нужен не весь спектр.
        subset_by_index: Диапазон номеров (lo, hi) включительно.
        tol: Допуск проверки невязки.

    Returns:
        EigResult: Значения по возрастанию и C-ортонормированные векторы.

    Raises:
        CholeskyError: C не положительно определена.
        EigenIterationError: Итерация LAPACK не сошлась.
        EigenResidualError: Проверка невязки не пройдена.
    """
    a_dense = _as_dense(a)
    c_dense = _as_dense(c)
    if a_dense.shape != c_dense.shape or a_dense.shape[0] != a_dense.shape[1]:
        raise ValueError(f"Размерности не совпадают: {a_dense.shape} и {c_dense.shape}")

    try:
        lower = scipy.linalg.cholesky(c_dense, lower=True)
    except np.linalg.LinAlgError as exc:
        raise CholeskyError(f"Матрица масс не положительно определена: {exc}") from exc

    reduced = scipy.linalg.solve_triangular(lower, a_dense, lower=True)
    reduced = scipy.linalg.solve_triangular(lower, reduced.T, lower=True)
    reduced = 0.5 * (reduced + reduced.T)

    try:
        values, vectors = scipy.linalg.eigh(
            reduced,
            subset_by_value=subset_by_value,
            subset_by_index=subset_by_index,
            check_finite=False,
        )
    except np.linalg.LinAlgError as exc:
        raise EigenIterationError(f"Симметричная итерация не сошлась: {exc}") from exc

    vectors = scipy.linalg.solve_triangular(lower.T, vectors, lower=False)
    vectors = _fix_signs(vectors)
    _check_result(a_dense, c_dense, values, vectors, tol)
    logger.debug("Решена задача размера %d, найдено %d значений", a_dense.shape[0], values.size)
    return EigResult(eigenvalues=values, eigenvectors=vectors)
