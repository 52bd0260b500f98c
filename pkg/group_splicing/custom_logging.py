import sys
from pathlib import Path

from loguru import logger

from group_splicing.modes import Command
from group_splicing.paths import LOGS_FOLDER

has_encountered_error = False


def setup_logger(out_dir: Path):
    logger.remove()
    logger.add(
        out_dir / LOGS_FOLDER / "group_splicing_{time}.log",
        retention="2 days",
        backtrace=True,
        diagnose=True,
    )
    logger.add(sys.stderr, level="WARNING")
    logger.add(lambda _: set_encountered_error(), level="ERROR")


def set_encountered_error():
    global has_encountered_error
    has_encountered_error = True


def log_startup_context(version: str, out_dir: Path, command: Command):
    version_message = f"group_splicing version: {version}"
    logger.info(version_message)
    print(version_message)
    logger.info(f"Output dir: {out_dir}")
    logger.info(f"Command: {command.value}")
