import logging
import sys
from logging import LogRecord
from types import FrameType
from typing import Optional, Union

from loguru import logger

VERBOSITY_LEVELS = ["WARNING", "INFO", "DEBUG"]


class InterceptHandler(logging.Handler):
    """Route stdlib logging records (networkx, multiprocessing) into loguru."""

    def emit(self, record: LogRecord) -> None:
        level: Union[int, str]
        try:
            level = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        # Walk back to the frame that issued the record so loguru reports the real caller
        frame: Optional[FrameType]
        frame, depth = logging.currentframe(), 2
        while frame and frame.f_code.co_filename == logging.__file__:
            frame = frame.f_back
            depth += 1

        logger.opt(depth=depth, exception=record.exc_info).log(level, record.getMessage())


def init_logger(verbosity: int = 0) -> None:
    """Configure the single stderr sink used by every command.

    Args:
        verbosity (int): 0 warnings only, 1 adds info, 2 or more adds debug.
            Timestamps are only printed from level 1 on.
    """
    level = VERBOSITY_LEVELS[min(max(verbosity, 0), len(VERBOSITY_LEVELS) - 1)]
    log_format = "<level>{level: <8}</level> | {name}:{function} - {message}"
    if verbosity > 0:
        log_format = "<green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> | " + log_format

    logger.remove()
    logger.add(sys.stderr, level=level, format=log_format)
    logging.basicConfig(handlers=[InterceptHandler()], level=0)
