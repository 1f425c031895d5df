from pathlib import Path

import numpy as np

from src.modules.helmholtz.domain.entities.medium import EigenPair, MediumConfig, SignClass
from src.modules.helmholtz.domain.entities.report import CommandReport
from src.modules.helmholtz.domain.interfaces.pipeline_item import PipelineItem
from src.modules.helmholtz.infrastructure.services.reporting import plots, tables
from src.modules.helmholtz.infrastructure.services.spectral_1d.eigenpairs import (
    classify_lambda0,
    count_interior_zeros_analytic,
    eigen_equation_quotient,
    eigenfunction_eval,
    eigenvalue_bracket,
    solve_eigenvalue,
    spectrum,
)
from src.modules.helmholtz.pipeline.base import CommandPipeline

QUOTIENT_TOL = 1e-10


class SpectrumPipeline(CommandPipeline, PipelineItem):
    """
    Полуаналитический спектр: таблица lambda_j, профили phi_j и развёртка по контрасту.

    Этапы:
        1. Решение трансцендентных уравнений для j_min <= j <= j_max
        2. Проверка невязки уравнения и попадания в интервал
        3. Профили собственных функций (CSV + SVG)
        4. lambda_0 и lambda_-1 для набора sigma_-
    """

    title = "СПЕКТР"

    def run(self) -> CommandReport:
        config = self.run_config.medium

        self.logger.info("Semi-analytic spectrum")
        pairs = spectrum(config, self.run_config.j_min, self.run_config.j_max)
        zeros = [count_interior_zeros_analytic(p, config) for p in pairs]
        self._written(tables.write_spectrum(self.output_dir / "spectrum.csv", pairs, zeros))

        self.report.lines += [
            f"Класс lambda_0: {classify_lambda0(config).value}",
            f"Отношение sigma_+ a_- / (a_+ sigma_-): {config.contrast_ratio:.6g}",
            "",
        ]
        for pair, (n_minus, n_plus) in zip(pairs, zeros):
            self.report.lines.append(
                f"j={pair.index:+d}  lambda={pair.lam:.12g}  alpha={pair.alpha:.6g}  "
                f"нули: {n_minus}/{n_plus}"
            )
            self._check_pair(config, pair)

        self.logger.info("Eigenfunction profiles")
        x = np.linspace(config.a_minus, config.a_plus, self.run_config.profile_points)
        for paths in self._map(lambda pair: self._write_profile(config, pair, x), pairs):
            self.report.files.extend(paths)

        self.logger.info("Contrast sweep")
        self.report.lines += ["", "Развёртка по sigma_-:"]
        for sigma_minus in self.run_config.contrast_sweep:
            swept = config.with_sigma_minus(sigma_minus)
            lam0 = solve_eigenvalue(swept, 0).lam
            lam_minus = solve_eigenvalue(swept, -1).lam
            self.report.lines.append(
                f"  sigma_-={sigma_minus:g}: {classify_lambda0(swept).value}, "
                f"lambda_0={lam0:.8g}, lambda_-1={lam_minus:.8g}"
            )
        return self.report

    def _check_pair(self, config: MediumConfig, pair: EigenPair) -> None:
        lo, hi = eigenvalue_bracket(config, pair.index)
        if pair.index != 0 and not lo < pair.lam < hi:
            self.report.failures.append(f"j={pair.index}: lambda вне интервала ({lo:.6g}, {hi:.6g})")
        if pair.sign_class is not SignClass.ZERO:
            quotient = eigen_equation_quotient(config, pair)
            if abs(quotient - 1.0) >= QUOTIENT_TOL:
                self.report.failures.append(f"j={pair.index}: невязка уравнения {abs(quotient - 1.0):.3e}")

    def _write_profile(self, config: MediumConfig, pair: EigenPair, x: np.ndarray) -> list[Path]:
        values = eigenfunction_eval(pair, config, x)
        stem = f"phi_{pair.index:+d}"
        paths = [tables.write_profile(self.output_dir / "profiles" / f"{stem}.csv", x, values)]
        if self.plot:
            paths.append(
                plots.plot_profiles(
                    self.output_dir / "profiles" / f"{stem}.svg",
                    x,
                    {f"phi_{pair.index}": values},
                    f"j = {pair.index}, lambda = {pair.lam:.6g}",
                )
            )
        return paths
