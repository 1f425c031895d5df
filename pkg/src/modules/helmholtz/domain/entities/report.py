from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class CommandReport:
    """
    Итог выполнения подкоманды.

    Attributes:
        title (str): Заголовок отчёта.
        lines (list[str]): Строки текстового отчёта.
        files (list[Path]): Записанные файлы.
        failures (list[str]): Невыполненные допуски; непустой список даёт код выхода 3.
    """

    title: str
    lines: list[str] = field(default_factory=list)
    files: list[Path] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def pages(self) -> list[str]:
        body = list(self.lines)
        if self.failures:
            body += ["", "Нарушенные допуски:"] + [f"  - {f}" for f in self.failures]
        if self.files:
            body += ["", "Файлы:"] + [f"  {p}" for p in self.files]
        return [self.title, "\n".join(body)]
