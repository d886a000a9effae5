"""
Log sink setup for command-line runs.

Library modules only call ``loguru.logger``; the CLI decides where the
records go. Records go to stderr so stdout carries nothing but reports.
"""

import sys

from loguru import logger

HUMAN_FORMAT = (
    "<green>{time:HH:mm:ss}</green> | <level>{level: <7}</level> | "
    "<cyan>{name}</cyan> - <level>{message}</level>"
)


def setup_logging(level: str = "INFO", json_only: bool = False) -> None:
    """
    Replace every loguru sink with one stderr sink.

    Args:
        level: Minimum level to emit
        json_only: Emit one serialized JSON record per line instead of text
    """
    logger.remove()
    if json_only:
        logger.add(sys.stderr, level=level, serialize=True)
    else:
        logger.add(sys.stderr, level=level, format=HUMAN_FORMAT, colorize=None)
