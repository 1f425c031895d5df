import logging
import math

import numpy as np

from src.modules.helmholtz.domain.entities.medium import MediumConfig
from src.modules.helmholtz.domain.entities.mesh import Mesh
from src.modules.helmholtz.domain.exceptions import MeshError

logger = logging.getLogger(__name__)


def _element_distance_to_interface(nodes: np.ndarray) -> np.ndarray:
    left, right = nodes[:-1], nodes[1:]
    straddles = (left <= 0.0) & (right >= 0.0)
    return np.where(straddles, 0.0, np.minimum(np.abs(left), np.abs(right)))


def build_mesh(config: MediumConfig, h: float, refine_radius: float, refine_levels: int) -> Mesh:
    """
    Равномерная сетка с шагом не больше h и узлом в x = 0, сгущённая к интерфейсу.

    После построения базовой сетки refine_levels раз делятся пополам все элементы,
    расстояние от которых до x = 0 меньше refine_radius.

    Args:
        config (MediumConfig): Задаёт концы области a_-, a_+.
        h (float): Шаг базовой сетки.
        refine_radius (float): Радиус сгущения вокруг интерфейса.
        refine_levels (int): Число раундов деления.

    Returns:
        Mesh: Готовая сетка.
    """
    if not h > 0:
        raise MeshError(f"Шаг сетки должен быть положительным, получено {h}")
    if not refine_radius > 0:
        raise MeshError(f"Радиус сгущения должен быть положительным, получено {refine_radius}")
    if refine_levels < 0:
        raise MeshError(f"Число уровней сгущения не может быть отрицательным: {refine_levels}")

    n_minus = max(1, math.ceil(config.length_minus / h))
    n_plus = max(1, math.ceil(config.length_plus / h))
    nodes = np.concatenate(
        [
            np.linspace(config.a_minus, 0.0, n_minus + 1),
            np.linspace(0.0, config.a_plus, n_plus + 1)[1:],
        ]
    )

    for level in range(refine_levels):
        selected = _element_distance_to_interface(nodes) < refine_radius
        midpoints = 0.5 * (nodes[:-1] + nodes[1:])[selected]
        nodes = np.sort(np.concatenate([nodes, midpoints]))
        logger.debug("Сгущение %d: +%d узлов", level + 1, midpoints.size)

    mesh = Mesh(nodes)
    logger.info(
        "Сетка: %d узлов, min h = %.3g, max h = %.3g",
        mesh.n_nodes,
        float(np.min(mesh.element_lengths)),
        float(np.max(mesh.element_lengths)),
    )
    return mesh
