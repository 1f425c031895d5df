from pathlib import Path

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from src.modules.helmholtz.domain.entities.gram import GramConfig, WeightMode
from src.modules.helmholtz.domain.entities.medium import MediumConfig
from src.modules.helmholtz.domain.exceptions import ConfigError

LIST_FIELDS = (
    "contrast_sweep",
    "seeds",
    "amplitude_fit_seeds",
    "amplitude_fit_values",
    "riesz_sigma_minus",
    "coercivity_k",
    "weyl_lambdas",
)


class RunConfig(BaseModel):
    """
    Описание пакетного запуска: данные задачи, сетка, продолжение, развёртки.

    Читается из плоского файла "key = value"; списки задаются через запятую.
    Значения по умолчанию соответствуют одномерному эксперименту на (-5, 5).
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    a_minus: float = -5.0
    a_plus: float = 5.0
    sigma_plus: float = 1.0
    sigma_minus: float = -2.0
    c_plus: float = 1.0
    c_minus: float = 1.0
    kappa: float = 1.0
    kappa_minus: float | None = None
    kappa_plus: float | None = None

    h: float = 2.0**-9
    refine_radius: float = 0.1
    refine_levels: int = 5

    j_min: int = -5
    j_max: int = 5
    profile_points: int = 401
    contrast_sweep: tuple[float, ...] = (-2.0, -1.5, -1.1, -1.005)

    seeds: tuple[int, ...] = (-2, 0, 5)
    steps: int = 100
    ds: float = 0.1
    newton_tol: float = 1e-10
    seed_amplitude: float = 1e-2
    lambda_min: float = -10.0
    lambda_max: float = 15.0
    dump_vectors: bool = False
    amplitude_fit_seeds: tuple[int, ...] = (0, 1, -1)
    amplitude_fit_values: tuple[float, ...] = (0.02, 0.04, 0.06)

    riesz_sigma_minus: tuple[float, ...] = (-2.0, -1.0, -0.5, -0.25)
    riesz_start: float = 10.0
    riesz_dimension_cap: int = 800
    riesz_fixed_lambda: float = 2000.0
    hilbert_j: int = 25
    weight_mode: WeightMode = WeightMode.GROWTH
    lambda_ref: float = 0.0

    coercivity_m: float = 0.01
    coercivity_k: tuple[float, ...] = (0.0, 0.1, 1.0, 10.0, 100.0, 1e3, 1e4, 1e5)
    coercivity_h: float = 2.0**-6
    coercivity_refine_levels: int = 2
    cutoff_r1: float | None = None
    cutoff_r2: float | None = None

    weyl_lambdas: tuple[float, ...] = (10.0, 100.0, 1000.0, 10000.0)
    weyl_j_max: int = 100

    output_dir: str | None = None

    @field_validator(*LIST_FIELDS, mode="before")
    @classmethod
    def _split_list(cls, value):
        if isinstance(value, str):
            return tuple(item.strip() for item in value.split(",") if item.strip())
        return value

    @field_validator("kappa_minus", "kappa_plus", "cutoff_r1", "cutoff_r2", "output_dir", mode="before")
    @classmethod
    def _empty_is_none(cls, value):
        if isinstance(value, str) and not value.strip():
            return None
        return value

    @field_validator("weight_mode", mode="before")
    @classmethod
    def _weight_mode_alias(cls, value):
        if isinstance(value, str):
            return WeightMode(value)
        return value

    @model_validator(mode="after")
    def _check_physics(self) -> "RunConfig":
        medium = self.medium
        for sigma_minus in self.contrast_sweep + self.riesz_sigma_minus:
            medium.with_sigma_minus(sigma_minus)
        if self.j_min > self.j_max:
            raise ValueError("j_min > j_max")
        if not (self.h > 0 and self.refine_radius > 0 and self.refine_levels >= 0):
            raise ValueError("Параметры сетки: нужно h > 0, refine_radius > 0, refine_levels >= 0")
        if not (self.steps >= 0 and self.ds > 0 and self.seed_amplitude > 0 and self.newton_tol > 0):
            raise ValueError("Параметры продолжения: нужно steps >= 0, ds > 0, seed_amplitude > 0")
        if self.lambda_min >= self.lambda_max:
            raise ValueError("lambda_min >= lambda_max")
        if any(v < 1 for v in self.weyl_lambdas) or self.riesz_start < 1:
            raise ValueError("Значения Lambda должны быть >= 1")
        return self

    @property
    def medium(self) -> MediumConfig:
        return MediumConfig(
            a_minus=self.a_minus,
            a_plus=self.a_plus,
            sigma_plus=self.sigma_plus,
            sigma_minus=self.sigma_minus,
            c_plus=self.c_plus,
            c_minus=self.c_minus,
            kappa=self.kappa,
            kappa_minus=self.kappa_minus,
            kappa_plus=self.kappa_plus,
        )

    @property
    def gram(self) -> GramConfig:
        return GramConfig(weight_mode=self.weight_mode, lambda_ref=self.lambda_ref)


def load_run_config(path: Path | None = None) -> RunConfig:
    """
    Читает RunConfig из файла "key = value" (комментарии через #).

    Raises:
        FileNotFoundError: Файла нет.
        ConfigError: Неизвестные ключи, ключи без значения или нарушенные ограничения.
    """
    if path is None:
        return RunConfig()
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Файл конфигурации не найден: {path}")

    values = dotenv_values(path)
    missing = [key for key, value in values.items() if value is None]
    if missing:
        raise ConfigError(f"Ключи без значения: {', '.join(missing)}")
    try:
        return RunConfig(**values)
    except ValidationError as exc:
        raise ConfigError(f"Некорректный файл {path}:\n{exc}") from exc
