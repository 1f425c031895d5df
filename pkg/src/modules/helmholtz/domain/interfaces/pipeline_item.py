from typing import Protocol

from src.modules.helmholtz.domain.entities.report import CommandReport


class PipelineItem(Protocol):
    """
    Контракт одной подкоманды вычислительного пайплайна.

    Любой элемент пайплайна обязан:
        - получить всё необходимое в конструкторе (RunConfig, каталог вывода)
        - записать свои файлы и вернуть отчёт
    """

    def run(self) -> CommandReport:
        """
        Выполняет логику подкоманды.

        Returns:
            CommandReport: Текстовый отчёт, список файлов и нарушенных допусков.
        """
        ...
