from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.modules.helmholtz.domain.exceptions import MeshError


@dataclass(frozen=True)
class Mesh:
    """
    Разбиение отрезка [a_-, a_+] для P1-элементов.

    Узлы строго возрастают, первый и последний совпадают с концами области.
    Неизвестными считаются значения во внутренних узлах (однородное условие Дирихле).
    """

    nodes: np.ndarray

    def __post_init__(self) -> None:
        nodes = np.array(self.nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < 3:
            raise MeshError("Сетка должна содержать хотя бы один внутренний узел.")
        if not np.all(np.isfinite(nodes)):
            raise MeshError("Узлы сетки должны быть конечными.")
        if np.any(np.diff(nodes) <= 0):
            raise MeshError("Узлы сетки должны строго возрастать.")
        nodes.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)

    @property
    def a_minus(self) -> float:
        return float(self.nodes[0])

    @property
    def a_plus(self) -> float:
        return float(self.nodes[-1])

    @property
    def n_nodes(self) -> int:
        return self.nodes.size

    @property
    def n_elements(self) -> int:
        return self.nodes.size - 1

    @property
    def n_dofs(self) -> int:
        return self.nodes.size - 2

    @property
    def element_lengths(self) -> np.ndarray:
        return np.diff(self.nodes)

    @property
    def element_midpoints(self) -> np.ndarray:
        return 0.5 * (self.nodes[:-1] + self.nodes[1:])

    @property
    def interior_nodes(self) -> np.ndarray:
        return self.nodes[1:-1]

    @property
    def has_interface_node(self) -> bool:
        return bool(np.any(self.nodes == 0.0))

    @property
    def interface_index(self) -> int:
        """Индекс узла x = 0 среди всех узлов."""
        hits = np.flatnonzero(self.nodes == 0.0)
        if hits.size == 0:
            raise MeshError("В сетке нет узла на интерфейсе x = 0.")
        return int(hits[0])

    def full_vector(self, u: np.ndarray) -> np.ndarray:
        """Дополняет вектор внутренних коэффициентов нулями Дирихле."""
        u = np.asarray(u, dtype=float)
        if u.size != self.n_dofs:
            raise ValueError(f"Ожидалось {self.n_dofs} коэффициентов, получено {u.size}")
        full = np.zeros(self.n_nodes)
        full[1:-1] = u
        return full

    def interpolate(self, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        """Узловая интерполяция функции f во внутренних узлах."""
        return np.asarray(f(self.interior_nodes), dtype=float)

    def evaluate(self, u: np.ndarray, x: np.ndarray | float) -> np.ndarray:
        """Значение P1-функции с внутренними коэффициентами u в точках x."""
        return np.interp(x, self.nodes, self.full_vector(u))

    def to_text(self) -> str:
        return f"{self.n_nodes}\n" + "\n".join(repr(float(x)) for x in self.nodes) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Mesh":
        lines = text.split()
        count = int(lines[0])
        if len(lines) - 1 != count:
            raise MeshError(f"Ожидалось {count} узлов, найдено {len(lines) - 1}")
        return cls(np.array([float(v) for v in lines[1:]]))
