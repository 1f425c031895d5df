from pathlib import Path

from src.modules.helmholtz.domain.entities.branch import Branch, BranchStatus
from src.modules.helmholtz.domain.entities.report import CommandReport
from src.modules.helmholtz.domain.exceptions import BorderedSystemError, ContinuationError, MatchingError
from src.modules.helmholtz.domain.interfaces.pipeline_item import PipelineItem
from src.modules.helmholtz.infrastructure.services.continuation.branch_tracer import (
    BranchTracer,
    ContinuationSettings,
    verify_point,
)
from src.modules.helmholtz.infrastructure.services.continuation.diagnostics import detect_plateau
from src.modules.helmholtz.infrastructure.services.eig.generalized_eig import generalized_sym_eig
from src.modules.helmholtz.infrastructure.services.eig.matching import match_to_analytic
from src.modules.helmholtz.infrastructure.services.fem.assembly import assemble_all
from src.modules.helmholtz.infrastructure.services.fem.mesh_builder import build_mesh
from src.modules.helmholtz.infrastructure.services.reporting import plots, tables
from src.modules.helmholtz.infrastructure.services.spectral_1d.eigenpairs import (
    solve_eigenvalue,
)
from src.modules.helmholtz.pipeline.base import CommandPipeline

REVERIFY_TOL = 1e-9
AMPLITUDE_FIT_TOL = 0.1
FEM_MATCH_TOL = 1e-3
PLATEAU_ONSET = -1.0
PLATEAU_TOL = 0.05


class BifurcationPipeline(CommandPipeline, PipelineItem):
    """
    Ветви C_j для заданных индексов посева.

    Этапы:
        1. Сетка со сгущением к интерфейсу и сборка матриц
        2. Дискретные собственные значения, сопоставленные с lambda_j посева
        3. Посев и продолжение каждой ветви (ветви независимы, считаются в пуле)
        4. Повторная проверка невязки и постоянства нулей вдоль ветви
        5. CSV по ветвям, общая бифуркационная диаграмма
        6. Проверка закона амплитуды lambda(s) = lambda_j - beta s^2
    """

    title = "БИФУРКАЦИОННЫЕ ВЕТВИ"

    def run(self) -> CommandReport:
        rc = self.run_config
        self.config = rc.medium

        self.logger.info("Mesh and assembly")
        self.mesh = build_mesh(self.config, rc.h, rc.refine_radius, rc.refine_levels)
        self.matrices = assemble_all(self.config, self.mesh)
        self.tracer = BranchTracer(
            self.config,
            self.mesh,
            self.matrices,
            ContinuationSettings(
                newton_tol=rc.newton_tol,
                lambda_min=rc.lambda_min,
                lambda_max=rc.lambda_max,
            ),
        )
        self.report.lines.append(f"Сетка: {self.mesh.n_nodes} узлов, шаг продолжения {rc.ds:g}")

        if rc.seeds:
            self.logger.info("Discrete spectrum")
            self._match_seeds()

        self.logger.info("Branch continuation")
        traced = self._map(self._trace, rc.seeds)

        diagram = {}
        for seed_index, branch, error in traced:
            if branch is None:
                self.report.failures.append(f"C_{seed_index}: {error}")
                continue
            if error:
                self.report.failures.append(f"C_{seed_index}: {error}")
            self._inspect(seed_index, branch)
            self._written(tables.write_branch(self.output_dir / f"branch_{seed_index}.csv", seed_index, branch))
            if rc.dump_vectors:
                self._dump_vectors(seed_index, branch)
            diagram[seed_index] = (branch.lambdas, branch.norms)

        if self.plot and rc.seeds:
            self._written(plots.plot_bifurcation_diagram(self.output_dir / "bifurcation.svg", diagram))

        self.logger.info("Amplitude law")
        self._amplitude_law()
        return self.report

    def _trace(self, seed_index: int) -> tuple[int, Branch | None, str]:
        pair = solve_eigenvalue(self.config, seed_index)
        try:
            seed = self.tracer.branch_seed(pair, self.run_config.seed_amplitude)
            return seed_index, self.tracer.continue_branch(seed, self.run_config.steps, self.run_config.ds), ""
        except BorderedSystemError as exc:
            return seed_index, exc.partial, str(exc)
        except ContinuationError as exc:
            return seed_index, None, str(exc)

    def _inspect(self, seed_index: int, branch: Branch) -> None:
        first, last = branch.points[0], branch.points[-1]
        self.report.lines.append(
            f"C_{seed_index}: {len(branch.points)} точек, статус {branch.status.value}, "
            f"lambda {first.lam:.6g} -> {last.lam:.6g}, ||u||_c до {last.l2c_norm:.4g}, "
            f"нули {first.zeros_minus}/{first.zeros_plus}"
        )
        if branch.status is BranchStatus.DIVERGED:
            self.report.failures.append(f"C_{seed_index}: продолжение прервано ({branch.message})")
        if self.config.kappa > 0 and len(branch.points) > 1 and branch.points[1].lam >= first.lam:
            self.report.failures.append(f"C_{seed_index}: ветвь не отклоняется влево при kappa > 0")
        if not branch.nodal_pattern_is_constant():
            self.report.failures.append(f"C_{seed_index}: число нулей или монотонность меняются вдоль ветви")

        worst = max(verify_point(self.mesh, self.matrices, p.u, p.lam) for p in branch.points)
        if worst > REVERIFY_TOL:
            self.report.failures.append(f"C_{seed_index}: невязка {worst:.3e} при повторной проверке")

        self._check_plateau(seed_index, branch)
        plateaus = [p for p in branch.points if p.plateau is not None]
        if plateaus:
            p = plateaus[-1]
            self.report.lines.append(
                f"    плато {p.plateau:.6g} при lambda={p.lam:.6g} (sqrt(-lambda)={(-p.lam) ** 0.5:.6g})"
            )
        if last.half_widths:
            widths = ", ".join(f"{w:.3g}" for w in last.half_widths)
            self.report.lines.append(f"    ширины экстремумов на Omega_-: {widths}")

    def _dump_vectors(self, seed_index: int, branch: Branch) -> None:
        path = self._written(
            tables.write_branch_vectors(self.output_dir / f"branch_{seed_index}_u.csv", self.mesh, branch)
        )
        vectors = tables.read_branch_vectors(path)
        for step, point in enumerate(branch.points):
            if verify_point(self.mesh, self.matrices, vectors[step], point.lam) > REVERIFY_TOL:
                self.report.failures.append(
                    f"C_{seed_index}: точка {step} не прошла проверку после чтения из {Path(path).name}"
                )

    def _amplitude_law(self) -> None:
        for seed_index in self.run_config.amplitude_fit_seeds:
            pair = solve_eigenvalue(self.config, seed_index)
            try:
                fitted, predicted, error = self.tracer.amplitude_law_fit(
                    pair, tuple(self.run_config.amplitude_fit_values)
                )
            except ContinuationError as exc:
                self.report.failures.append(f"Закон амплитуды j={seed_index}: {exc}")
                continue
            self.report.lines.append(
                f"Закон амплитуды j={seed_index}: beta={fitted:.6g} (прогноз {predicted:.6g}, "
                f"ошибка {error:.2%})"
            )
            if error > AMPLITUDE_FIT_TOL:
                self.report.failures.append(f"Закон амплитуды j={seed_index}: ошибка {error:.2%}")

    def _match_seeds(self) -> None:
        pairs = [solve_eigenvalue(self.config, j) for j in sorted(set(self.run_config.seeds))]
        window = max(abs(p.lam) for p in pairs)
        margin = 0.2 * window + 1.0
        result = generalized_sym_eig(
            self.matrices.stiffness, self.matrices.mass, subset_by_value=(-window - margin, window + margin)
        )
        try:
            matches = match_to_analytic(result, pairs, window)
        except MatchingError as exc:
            self.report.failures.append(str(exc))
            return
        for match in matches:
            deviation = abs(match.discrete - match.analytic) / max(abs(match.analytic), 1.0)
            self.report.lines.append(
                f"j={match.index:+d}: lambda_h={match.discrete:.10g}, lambda={match.analytic:.10g}, "
                f"отклонение {deviation:.2e}"
            )
            if deviation > FEM_MATCH_TOL:
                self.report.failures.append(f"j={match.index}: дискретное lambda отличается на {deviation:.2e}")

    def _check_plateau(self, seed_index: int, branch: Branch) -> None:
        """Ветвь без нулей на Omega_- при lambda < -1 должна выйти на плато sqrt(-lambda)."""
        if branch.points[0].zeros_minus != 0:
            return
        deep = [p for p in branch.points if p.lam < PLATEAU_ONSET]
        if not deep:
            return
        found = (detect_plateau(self.config, self.mesh, p) for p in deep)
        if not any(plateau is not None and plateau[1] <= PLATEAU_TOL for plateau in found):
            self.report.failures.append(
                f"C_{seed_index}: нет плато в пределах {PLATEAU_TOL:.0%} от sqrt(-lambda) при lambda < {PLATEAU_ONSET:g}"
            )
