from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse


@dataclass(frozen=True)
class SymBandMatrix:
    """
    Симметричная ленточная матрица в нижнем упакованном формате LAPACK.

    bands[k, i] = A[i + k, i] для k = 0..bandwidth, хвосты строк дополнены нулями.
    Симметрия обеспечена самим форматом хранения: верхний треугольник не хранится.

    Attributes:
        bands (np.ndarray): Массив формы (bandwidth + 1, n).
    """

    bands: np.ndarray

    def __post_init__(self) -> None:
        bands = np.asarray(self.bands, dtype=float)
        if bands.ndim != 2 or bands.shape[0] < 1:
            raise ValueError(f"Ожидался массив лент формы (b+1, n), получено {bands.shape}")
        bands = bands.copy()
        for k in range(1, bands.shape[0]):
            bands[k, bands.shape[1] - k :] = 0.0
        bands.setflags(write=False)
        object.__setattr__(self, "bands", bands)

    @property
    def n(self) -> int:
        return self.bands.shape[1]

    @property
    def bandwidth(self) -> int:
        return self.bands.shape[0] - 1

    @classmethod
    def tridiagonal(cls, diagonal: np.ndarray, off_diagonal: np.ndarray) -> "SymBandMatrix":
        diagonal = np.asarray(diagonal, dtype=float)
        bands = np.zeros((2, diagonal.size))
        bands[0] = diagonal
        bands[1, : diagonal.size - 1] = off_diagonal
        return cls(bands)

    @classmethod
    def identity(cls, n: int) -> "SymBandMatrix":
        return cls(np.ones((1, n)))

    @classmethod
    def from_dense(
        cls, dense: np.ndarray, bandwidth: int | None = None, atol: float = 0.0
    ) -> "SymBandMatrix":
        dense = np.asarray(dense, dtype=float)
        if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
            raise ValueError("Ожидалась квадратная матрица.")
        scale = max(1.0, float(np.max(np.abs(dense)))) if dense.size else 1.0
        if not np.allclose(dense, dense.T, rtol=0.0, atol=atol * scale):
            raise ValueError("Матрица не симметрична.")

        n = dense.shape[0]
        if bandwidth is None:
            rows, cols = np.nonzero(np.tril(dense))
            bandwidth = int(np.max(rows - cols)) if rows.size else 0

        bands = np.zeros((bandwidth + 1, n))
        for k in range(bandwidth + 1):
            bands[k, : n - k] = np.diagonal(dense, offset=-k)
        return cls(bands)

    def diagonal(self) -> np.ndarray:
        return np.array(self.bands[0])

    def to_dense(self) -> np.ndarray:
        dense = np.diag(self.bands[0])
        for k in range(1, self.bandwidth + 1):
            cols = np.arange(self.n - k)
            band = self.bands[k, : self.n - k]
            dense[cols + k, cols] = band
            dense[cols, cols + k] = band
        return dense

    def to_sparse(self) -> scipy.sparse.csr_matrix:
        data = [self.bands[0]]
        offsets = [0]
        for k in range(1, self.bandwidth + 1):
            band = self.bands[k, : self.n - k]
            data.extend([band, band])
            offsets.extend([-k, k])
        return scipy.sparse.diags(data, offsets, shape=(self.n, self.n), format="csr")

    def __matmul__(self, vector: np.ndarray) -> np.ndarray:
        vector = np.asarray(vector, dtype=float)
        result = self.bands[0] * vector
        for k in range(1, self.bandwidth + 1):
            band = self.bands[k, : self.n - k]
            result[k:] += band * vector[: self.n - k]
            result[: self.n - k] += band * vector[k:]
        return result

    def quadratic_form(self, u: np.ndarray, v: np.ndarray | None = None) -> float:
        v = u if v is None else v
        return float(np.dot(v, self @ u))

    def _aligned(self, other: "SymBandMatrix") -> tuple[np.ndarray, np.ndarray]:
        if self.n != other.n:
            raise ValueError(f"Размерности не совпадают: {self.n} и {other.n}")
        width = max(self.bandwidth, other.bandwidth) + 1
        left = np.zeros((width, self.n))
        right = np.zeros((width, self.n))
        left[: self.bands.shape[0]] = self.bands
        right[: other.bands.shape[0]] = other.bands
        return left, right

    def __add__(self, other: "SymBandMatrix") -> "SymBandMatrix":
        left, right = self._aligned(other)
        return SymBandMatrix(left + right)

    def __sub__(self, other: "SymBandMatrix") -> "SymBandMatrix":
        left, right = self._aligned(other)
        return SymBandMatrix(left - right)

    def __mul__(self, scalar: float) -> "SymBandMatrix":
        return SymBandMatrix(self.bands * float(scalar))

    __rmul__ = __mul__

    def norm_inf(self) -> float:
        """Максимальная сумма модулей по строкам."""
        row_sums = np.abs(self.bands[0]).copy()
        for k in range(1, self.bandwidth + 1):
            band = np.abs(self.bands[k, : self.n - k])
            row_sums[k:] += band
            row_sums[: self.n - k] += band
        return float(np.max(row_sums)) if row_sums.size else 0.0

    def is_positive_definite(self) -> bool:
        try:
            scipy.linalg.cholesky_banded(self.bands, lower=True)
        except np.linalg.LinAlgError:
            return False
        return True

    def principal_submatrix(self, start: int, stop: int) -> "SymBandMatrix":
        return SymBandMatrix(self.bands[:, start:stop])

    def to_text(self) -> str:
        """
        Текстовый дамп для отладки.

        Первая строка: размерность и ширина ленты. Далее по одной строке
        на каждую ленту k = 0..bandwidth (значения через пробел, repr-точность).
        """
        lines = [f"{self.n} {self.bandwidth}"]
        for k in range(self.bandwidth + 1):
            lines.append(" ".join(repr(float(v)) for v in self.bands[k, : self.n - k]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SymBandMatrix":
        lines = text.strip("\n").split("\n")
        n, bandwidth = (int(v) for v in lines[0].split())
        if len(lines) != bandwidth + 2:
            raise ValueError(
                f"Ожидалось {bandwidth + 1} строк лент, найдено {len(lines) - 1}"
            )
        bands = np.zeros((bandwidth + 1, n))
        for k in range(bandwidth + 1):
            values = lines[k + 1].split()
            if len(values) != n - k:
                raise ValueError(f"Лента {k}: ожидалось {n - k} значений, найдено {len(values)}")
            if values:
                bands[k, : n - k] = [float(v) for v in values]
        return cls(bands)
