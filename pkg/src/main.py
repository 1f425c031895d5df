import argparse
import asyncio
import logging
import sys
from pathlib import Path

from src.application.services import PIPELINES, ComputationService
from src.config import settings
from src.domain.run_config import load_run_config
from src.modules.helmholtz.domain.exceptions import (
    ConfigError,
    DomainError,
    MeshError,
    NumericalError,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

logger = logging.getLogger(__name__)


def render_report(pages: list[str]) -> None:
    """Первая страница - заголовок, остальные печатаются как есть."""
    title, *body = pages
    print(f"\n{title}\n{'=' * len(title)}")
    for page in body:
        print(page, end="\n\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="helmholtz-toolkit",
        description="Спектр, T-коэрцитивность и ветви решений одномерного уравнения Гельмгольца "
        "со знакопеременным коэффициентом диффузии.",
    )
    parser.add_argument("command", choices=sorted(PIPELINES))
    parser.add_argument("--config", type=Path, default=None, help="файл key = value")
    parser.add_argument("--out", type=Path, default=None, help="каталог для CSV и SVG")
    parser.add_argument("--jobs", type=int, default=settings.jobs, help="размер пула потоков")
    parser.add_argument(
        "--plot",
        action=argparse.BooleanOptionalAction,
        default=settings.plot,
        help="писать SVG-рисунки",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=settings.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        run_config = load_run_config(args.config)
    except ConfigError as e:
        print(e, file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(e, file=sys.stderr)
        return EXIT_IO

    output_dir = args.out or Path(run_config.output_dir or settings.output_dir)
    service = ComputationService(output_dir=output_dir, jobs=args.jobs, plot=args.plot)

    try:
        report = asyncio.run(service.run_command(args.command, run_config))
    except (ConfigError, DomainError, MeshError) as e:
        print(e, file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as e:
        logger.exception("Численный сбой")
        print(e, file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as e:
        print(e, file=sys.stderr)
        return EXIT_IO

    render_report(report.pages())
    return EXIT_OK if report.ok else EXIT_NUMERICAL


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
