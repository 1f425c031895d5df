import pytest

from src.modules.helmholtz.domain.entities.medium import MediumConfig
from src.modules.helmholtz.infrastructure.services.fem.assembly import assemble_all
from src.modules.helmholtz.infrastructure.services.fem.mesh_builder import build_mesh


@pytest.fixture(scope="session")
def medium() -> MediumConfig:
    """Основной эксперимент: (-5, 5), sigma_- = -2, lambda_0 < 0."""
    return MediumConfig()


@pytest.fixture(scope="session")
def symmetric_medium() -> MediumConfig:
    """Зеркальная среда sigma_- = -1: lambda_0 = 0."""
    return MediumConfig(sigma_minus=-1.0)


@pytest.fixture(scope="session")
def positive_medium() -> MediumConfig:
    """Короткая Omega_+ и слабый контраст: lambda_0 > 0."""
    return MediumConfig(a_minus=-5.0, a_plus=1.0, sigma_minus=-0.5)


@pytest.fixture(scope="session")
def near_critical_medium() -> MediumConfig:
    return MediumConfig(sigma_minus=-1.005)


@pytest.fixture(scope="session")
def coarse_mesh(medium):
    return build_mesh(medium, 2.0**-5, 0.1, 2)


@pytest.fixture(scope="session")
def coarse_matrices(medium, coarse_mesh):
    return assemble_all(medium, coarse_mesh)
