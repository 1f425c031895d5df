import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Iterable, TypeVar

from src.domain.run_config import RunConfig
from src.modules.helmholtz.domain.entities.report import CommandReport

T = TypeVar("T")
R = TypeVar("R")


class CommandPipeline(object):
    """
    Общая часть подкоманд: конфигурация запуска, каталог вывода и пул потоков.

    Attributes:
        run_config (RunConfig): Описание запуска.
        output_dir (Path): Куда писать CSV и SVG.
        jobs (int): Размер пула для независимых расчётов.
        plot (bool): Писать ли SVG.
    """

    title = ""

    def __init__(self, run_config: RunConfig, output_dir: Path, jobs: int = 1, plot: bool = True):
        self.run_config = run_config
        self.output_dir = Path(output_dir)
        self.jobs = max(1, int(jobs))
        self.plot = plot
        self.logger = logging.getLogger(self.__class__.__module__)
        self.report = CommandReport(title=self.title)

    def _map(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        items = list(items)
        if self.jobs == 1 or len(items) < 2:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.jobs) as pool:
            return list(pool.map(fn, items))

    def _written(self, path: Path) -> Path:
        self.report.files.append(path)
        return path

    def run(self) -> CommandReport:
        raise NotImplementedError
