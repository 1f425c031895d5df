import asyncio
from pathlib import Path

from src.domain.run_config import RunConfig
from src.modules.helmholtz.domain.entities.report import CommandReport
from src.modules.helmholtz.pipeline.bifurcation_pipeline import BifurcationPipeline
from src.modules.helmholtz.pipeline.coercivity_pipeline import CoercivityPipeline
from src.modules.helmholtz.pipeline.riesz_pipeline import RieszPipeline
from src.modules.helmholtz.pipeline.spectrum_pipeline import SpectrumPipeline
from src.modules.helmholtz.pipeline.weyl_pipeline import WeylPipeline

PIPELINES = {
    "spectrum": SpectrumPipeline,
    "bifurcate": BifurcationPipeline,
    "riesz": RieszPipeline,
    "coercivity": CoercivityPipeline,
    "weyl": WeylPipeline,
}


class ComputationService:
    def __init__(self, output_dir: Path, jobs: int = 1, plot: bool = True):
        self.output_dir = Path(output_dir)
        self.jobs = jobs
        self.plot = plot

    def is_supported_command(self, command: str) -> bool:
        return command in PIPELINES

    async def run_command(self, command: str, run_config: RunConfig) -> CommandReport:
        if not self.is_supported_command(command):
            raise ValueError(f"Unsupported command: {command}")

        pipeline = PIPELINES[command](
            run_config=run_config,
            output_dir=self.output_dir,
            jobs=self.jobs,
            plot=self.plot,
        )
        report: CommandReport = await asyncio.to_thread(pipeline.run)

        return report
