import numpy as np

from src.modules.helmholtz.domain.entities.eig_result import EigenMatch, EigResult
from src.modules.helmholtz.domain.entities.medium import EigenPair
from src.modules.helmholtz.domain.exceptions import MatchingError


def match_to_analytic(
    result: EigResult, pairs: list[EigenPair], window: float, rtol: float = 0.05
) -> list[EigenMatch]:
    """
    Инъективное сопоставление аналитических lambda_j с |lambda_j| <= window
    ближайшим ещё не занятым дискретным значениям.

    Пары обрабатываются в порядке возрастания |lambda_j|.

    Raises:
        MatchingError: Для lambda_j нет дискретного значения в пределах rtol.
    """
    discrete = np.asarray(result.eigenvalues, dtype=float)
    used = np.zeros(discrete.size, dtype=bool)
    matches = []

    for pair in sorted((p for p in pairs if abs(p.lam) <= window), key=lambda p: abs(p.lam)):
        distance = np.where(used, np.inf, np.abs(discrete - pair.lam))
        if distance.size == 0 or not np.isfinite(distance.min()):
            raise MatchingError(pair.index, pair.lam, None)
        position = int(np.argmin(distance))
        if distance[position] > rtol * max(abs(pair.lam), 1.0):
            raise MatchingError(pair.index, pair.lam, float(discrete[position]))
        used[position] = True
        matches.append(
            EigenMatch(
                index=pair.index,
                analytic=pair.lam,
                discrete=float(discrete[position]),
                discrete_position=position,
            )
        )
    return sorted(matches, key=lambda m: m.index)
