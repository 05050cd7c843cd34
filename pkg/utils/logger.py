"""
ChainCensus — Centralised Logging
Uses loguru for structured console + optional file logging.
Console output goes to stderr so stdout stays clean for CSV/JSON tables.
"""

import sys
from loguru import logger
from config.settings import LOG_LEVEL, LOG_FILE


def _stderr_sink(message) -> None:
    # sys.stderr is looked up on every write
    sys.stderr.write(message)


def configure_logging(level: str = LOG_LEVEL, log_file: str = LOG_FILE) -> None:
    """(Re)install the console sink and, when a path is given, a rotating file sink."""
    logger.remove()

    # Console handler: coloured, human-readable
    logger.add(
        _stderr_sink,
        level=level.upper(),
        format=(
            "<green>{time:HH:mm:ss}</green> | "
            "<level>{level: <8}</level> | "
            "<cyan>{name}</cyan>:<cyan>{line}</cyan> — "
            "<level>{message}</level>"
        ),
        colorize=True,
    )

    # File handler: full detail, rotating
    if log_file:
        logger.add(
            log_file,
            level="DEBUG",
            rotation="10 MB",
            retention="7 days",
            compression="zip",
            format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{line} — {message}",
        )


configure_logging()

__all__ = ["logger", "configure_logging", "get_logger"]


def get_logger(name=None):
    return logger
