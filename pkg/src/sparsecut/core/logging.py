"""
Console logging for the command line front-end.
"""

import logging
from typing import Optional, Union

from rich.console import Console
from rich.logging import RichHandler

from sparsecut.core.config import get_settings

_HANDLER_NAME = "sparsecut-rich"


def verbosity_to_level(verbose: int) -> int:
    """Map a repeated ``-v`` count to a logging level."""
    if verbose >= 2:
        return logging.DEBUG
    if verbose == 1:
        return logging.INFO
    return logging.getLevelName(get_settings().log_level.upper())


def configure_logging(level: Optional[Union[int, str]] = None) -> None:
    """Attach a RichHandler writing to stderr to the package logger.

    Args:
        level: Logging level; defaults to ``SPARSECUT_LOG_LEVEL``.
    """
    if level is None:
        level = get_settings().log_level.upper()
    logger = logging.getLogger("sparsecut")
    logger.setLevel(level)
    if any(h.get_name() == _HANDLER_NAME for h in logger.handlers):
        return
    handler = RichHandler(
        console=Console(stderr=True), show_path=False, rich_tracebacks=True
    )
    handler.set_name(_HANDLER_NAME)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    logger.addHandler(handler)
