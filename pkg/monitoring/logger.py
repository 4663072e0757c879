"""
PAMDP EXPLORER - Logger
=======================
- Console: level colours when stderr is a terminal, ASCII-only on Windows
- Files: rotating UTF-8 run log plus an error-only log next to it

Handlers go on the root logger so every `logging.getLogger(__name__)`
in the package reaches them. Library modules never call this.
"""

import logging
import logging.handlers
import platform
import sys
from pathlib import Path
from typing import Optional, TextIO, Union

import config

IS_WINDOWS = platform.system() == "Windows"

FILE_FORMAT = "%(asctime)s | %(name)s | %(levelname)s | %(filename)s:%(lineno)d | %(message)s"
CONSOLE_FORMAT = "%(asctime)s | %(levelname)-8s | %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

LEVEL_COLORS = {
    logging.DEBUG: "\033[36m",
    logging.INFO: "\033[32m",
    logging.WARNING: "\033[33m",
    logging.ERROR: "\033[31m",
    logging.CRITICAL: "\033[35m",
}
RESET = "\033[0m"


class ConsoleFormatter(logging.Formatter):
    """Colours by level; β, σ and emoji become '?' on Windows code pages"""

    def __init__(self, use_color: bool):
        super().__init__(CONSOLE_FORMAT, datefmt=DATE_FORMAT)
        self.use_color = use_color and not IS_WINDOWS

    def format(self, record: logging.LogRecord) -> str:
        text = super().format(record)
        if IS_WINDOWS:
            return text.encode("ascii", errors="replace").decode("ascii")
        if self.use_color:
            return f"{LEVEL_COLORS.get(record.levelno, RESET)}{text}{RESET}"
        return text


def _rotating(path: Path, level: int) -> logging.Handler:
    handler = logging.handlers.RotatingFileHandler(
        path,
        maxBytes=config.LOG_MAX_SIZE,
        backupCount=config.LOG_BACKUP_COUNT,
        encoding="utf-8",
    )
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt=DATE_FORMAT))
    return handler


def setup_logging(
    level: str = config.LOG_LEVEL,
    log_dir: Optional[Union[str, Path]] = config.LOG_DIR,
    name: str = "pamdp",
    stream: Optional[TextIO] = None,
) -> logging.Logger:
    """
    Install console + rotating file handlers on the root logger,
    replacing whatever was there. `log_dir=None` keeps output on the
    console only.
    """
    stream = stream or sys.stderr
    root = logging.getLogger()
    root.setLevel(logging.DEBUG)
    for old in list(root.handlers):
        root.removeHandler(old)
        old.close()

    console = logging.StreamHandler(stream)
    console.setLevel(getattr(logging, str(level).upper(), logging.INFO))
    console.setFormatter(ConsoleFormatter(use_color=hasattr(stream, "isatty") and stream.isatty()))
    root.addHandler(console)

    if log_dir is not None:
        directory = Path(log_dir)
        directory.mkdir(parents=True, exist_ok=True)
        root.addHandler(_rotating(directory / f"{name}.log", logging.DEBUG))
        root.addHandler(_rotating(directory / f"{name}_errors.log", logging.ERROR))

    # third-party chatter
    logging.getLogger("matplotlib").setLevel(logging.WARNING)
    return logging.getLogger(name)
