import numpy as np

from src.modules.helmholtz.domain.entities.gram import WeightMode
from src.modules.helmholtz.domain.entities.report import CommandReport
from src.modules.helmholtz.domain.interfaces.pipeline_item import PipelineItem
from src.modules.helmholtz.infrastructure.services.reporting import plots, tables
from src.modules.helmholtz.infrastructure.services.riesz.gram import (
    diagonal_growth,
    extreme_eigs,
    gram_matrix,
    hilbert_bound_report,
    lambda_sweep,
    one_sided_bound_check,
)
from src.modules.helmholtz.pipeline.base import CommandPipeline

STABILIZATION_TOL = 0.02
INTERLACING_SLACK = 1e-12
DIAGONAL_GROWTH_TOL = 1.05


class RieszPipeline(CommandPipeline, PipelineItem):
    """
    Экстремальные собственные значения M_Lambda при росте Lambda для набора sigma_-.

    Этапы:
        1. Развёртка Lambda = 10, 20, 40, ... для каждого sigma_- (в пуле)
        2. Чередование экстремумов и стабилизация min на последнем удвоении
           и ограниченность диагонали M_Lambda
        3. Сравнение min при фиксированном Lambda по мере |sigma_-| -> 0
        4. Подобранная константа неравенства Гильберта и односторонняя оценка
    """

    title = "БАЗИС РИССА"

    def run(self) -> CommandReport:
        rc = self.run_config
        base = rc.medium
        gcfg = rc.gram

        self.logger.info("Lambda sweep")
        sweeps = self._map(
            lambda sigma_minus: lambda_sweep(
                base.with_sigma_minus(sigma_minus), gcfg, rc.riesz_start, rc.riesz_dimension_cap
            ),
            rc.riesz_sigma_minus,
        )
        overlay = {}
        for sigma_minus, rows in zip(rc.riesz_sigma_minus, sweeps):
            self._written(tables.write_riesz(self.output_dir / f"riesz_sigma_minus_{sigma_minus:g}.csv", rows))
            overlay[sigma_minus] = (
                np.array([r.Lambda for r in rows]),
                np.array([r.min_eig for r in rows]),
                np.array([r.max_eig for r in rows]),
            )
            self._check_sweep(sigma_minus, rows)
        if self.plot:
            self._written(plots.plot_riesz_sweep(self.output_dir / "riesz.svg", overlay))

        self.logger.info("Contrast ordering at fixed Lambda")
        self._check_contrast_ordering()

        self.logger.info("Hilbert-type bound")
        report = hilbert_bound_report(base, rc.hilbert_j)
        d_constant, worst = one_sided_bound_check(base, rc.hilbert_j)
        self.report.lines += [
            "",
            f"G (|i|,|j| <= {report.J}) = {report.g_fit:.6g}, пара {report.worst_pair}",
            f"G (|i|,|j| <= {2 * report.J}) = {report.g_fit_double:.6g}, рост {report.growth:.4f}",
            f"Односторонняя оценка: D = {d_constant:.6g}, max отношение {worst:.4f}",
        ]
        if not report.bounded:
            self.report.failures.append(f"G растёт при удвоении J: {report.growth:.4f} > 1.05")
        if worst > 1.0:
            self.report.failures.append(f"Односторонняя оценка нарушена: {worst:.4f}")
        return self.report

    def _check_sweep(self, sigma_minus: float, rows) -> None:
        if not rows:
            self.report.failures.append(f"sigma_-={sigma_minus:g}: развёртка пуста")
            return
        last = rows[-1]
        self.report.lines.append(
            f"sigma_-={sigma_minus:g}: Lambda до {last.Lambda:g} (dim {last.dim}), "
            f"min={last.min_eig:.6g}, max={last.max_eig:.6g}"
        )
        mins = np.array([r.min_eig for r in rows])
        maxs = np.array([r.max_eig for r in rows])
        if np.any(np.diff(mins) > INTERLACING_SLACK) or np.any(np.diff(maxs) < -INTERLACING_SLACK):
            self.report.failures.append(f"sigma_-={sigma_minus:g}: нарушено чередование экстремумов")
        if np.any(mins <= 0):
            self.report.failures.append(f"sigma_-={sigma_minus:g}: min собственное значение не положительно")
        if self.run_config.weight_mode is WeightMode.GROWTH:
            growth = diagonal_growth(rows)
            if growth > DIAGONAL_GROWTH_TOL:
                self.report.failures.append(f"sigma_-={sigma_minus:g}: диагональ M_Lambda растёт ({growth:.4f})")
        if sigma_minus == self.run_config.sigma_minus and len(rows) >= 2:
            change = abs(mins[-1] - mins[-2]) / abs(mins[-2])
            self.report.lines.append(f"    изменение min на последнем удвоении: {change:.2%}")
            if change >= STABILIZATION_TOL:
                self.report.failures.append(f"sigma_-={sigma_minus:g}: min не стабилизировался ({change:.2%})")

    def _check_contrast_ordering(self) -> None:
        rc = self.run_config
        ordered = sorted(rc.riesz_sigma_minus)
        mins = [
            extreme_eigs(gram_matrix(rc.medium.with_sigma_minus(s), rc.gram, rc.riesz_fixed_lambda))[0]
            for s in ordered
        ]
        self.report.lines += ["", f"min при Lambda={rc.riesz_fixed_lambda:g}:"]
        self.report.lines += [f"  sigma_-={s:g}: {v:.6g}" for s, v in zip(ordered, mins)]
        # ordered по возрастанию sigma_-, то есть по убыванию |sigma_-|
        if any(v <= 0 for v in mins) or any(b >= a for a, b in zip(mins, mins[1:])):
            self.report.failures.append("min собственное значение не убывает при |sigma_-| -> 0")
