import numpy as np

from src.modules.helmholtz.domain.entities.report import CommandReport
from src.modules.helmholtz.domain.interfaces.pipeline_item import PipelineItem
from src.modules.helmholtz.infrastructure.services.reporting import plots, tables
from src.modules.helmholtz.infrastructure.services.spectral_1d.eigenpairs import (
    growth_constant,
    weyl_count,
    weyl_constant,
    weyl_slope,
)
from src.modules.helmholtz.pipeline.base import CommandPipeline

SLOPE_TOL = 0.05
ASYMPTOTIC_FROM = 1000.0


class WeylPipeline(CommandPipeline, PipelineItem):
    """Считающая функция count(Lambda) против sqrt(Lambda) и подобранные константы."""

    title = "ЗАКОН ВЕЙЛЯ"

    def run(self) -> CommandReport:
        rc = self.run_config
        config = rc.medium
        lambdas = sorted(rc.weyl_lambdas)

        counts = self._map(lambda value: weyl_count(config, value), lambdas)
        slope = weyl_slope(config)
        fitted = weyl_constant(config, lambdas)
        growth = growth_constant(config, rc.weyl_j_max)

        self._written(tables.write_weyl(self.output_dir / "weyl.csv", lambdas, counts))
        if self.plot:
            self._written(plots.plot_weyl(self.output_dir / "weyl.svg", np.array(lambdas), np.array(counts), slope, fitted))

        self.report.lines += [
            f"Асимптотический наклон (k_+ a_+ + k_- |a_-|)/pi = {slope:.6f}",
            f"M = max count/sqrt(Lambda) = {fitted:.6f}",
            f"m = min (1+|lambda_j|)/(1+|j|)^2 по |j| <= {rc.weyl_j_max}: {growth:.6g}",
            "",
        ]
        for value, count in zip(lambdas, counts):
            ratio = count / np.sqrt(value)
            self.report.lines.append(f"Lambda={value:<10g} count={count:<6d} count/sqrt(Lambda)={ratio:.5f}")
            if value >= ASYMPTOTIC_FROM and abs(ratio - slope) > SLOPE_TOL * slope:
                self.report.failures.append(f"Lambda={value:g}: отклонение от наклона {abs(ratio - slope) / slope:.2%}")
        if any(b < a for a, b in zip(counts, counts[1:])):
            self.report.failures.append("count(Lambda) убывает")
        if not growth > 0:
            self.report.failures.append("Константа роста m не положительна")
        return self.report
