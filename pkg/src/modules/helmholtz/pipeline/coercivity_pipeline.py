from src.modules.helmholtz.domain.entities.report import CommandReport
from src.modules.helmholtz.domain.interfaces.pipeline_item import PipelineItem
from src.modules.helmholtz.infrastructure.services.fem.assembly import AssemblyWeight
from src.modules.helmholtz.infrastructure.services.fem.mesh_builder import build_mesh
from src.modules.helmholtz.infrastructure.services.fem.t_coercivity import (
    Cutoff,
    coercivity_check,
    coercivity_sweep,
)
from src.modules.helmholtz.infrastructure.services.reporting import tables
from src.modules.helmholtz.pipeline.base import CommandPipeline

SANITY_TOL = 1e-8
MONOTONE_SLACK = 1e-9


class CoercivityPipeline(CommandPipeline, PipelineItem):
    """Дискретная проверка a(u, T u) + k <u, u>_c >= min_eig ||u||_H^2 по сетке k."""

    title = "T-КОЭРЦИТИВНОСТЬ"

    def run(self) -> CommandReport:
        rc = self.run_config
        config = rc.medium
        mesh = build_mesh(config, rc.coercivity_h, rc.refine_radius, rc.coercivity_refine_levels)
        default = Cutoff.default_for(config)
        chi = Cutoff(
            r1=default.r1 if rc.cutoff_r1 is None else rc.cutoff_r1,
            r2=default.r2 if rc.cutoff_r2 is None else rc.cutoff_r2,
        )

        self.logger.info("Sanity check with |sigma| and identity")
        sanity = coercivity_check(
            config, mesh, rc.coercivity_m, chi, 0.0, weight=AssemblyWeight.ABS_SIGMA, use_transform=False
        )
        self.report.lines.append(f"|sigma|, T = id, k = 0: min_eig = {sanity.min_eig:.12g}")
        if abs(sanity.min_eig - 1.0) > SANITY_TOL:
            self.report.failures.append(f"Проверка нормировки: min_eig = {sanity.min_eig:.12g} != 1")

        self.logger.info("k sweep")
        results = coercivity_sweep(config, mesh, rc.coercivity_m, chi, list(rc.coercivity_k))
        self._written(tables.write_coercivity(self.output_dir / "coercivity.csv", results))

        self.report.lines += ["", f"m = {rc.coercivity_m:g}, chi: r1 = {chi.r1:g}, r2 = {chi.r2:g}"]
        for r in results:
            self.report.lines.append(f"k = {r.k:<10g} min_eig = {r.min_eig:.6f}  {'pass' if r.passed else '-'}")

        if not any(r.passed for r in results):
            self.report.failures.append("Ни одно k из сетки не дало min_eig >= 0.4")
        if any(b.min_eig < a.min_eig - MONOTONE_SLACK for a, b in zip(results, results[1:])):
            self.report.failures.append("min_eig не монотонен по k")
        return self.report
