# /utils/log_utils.py
# Created On: Oct 19, 2026
#
import logging

from rich.console import Console
from rich.logging import RichHandler

LEVELS = {0: logging.WARNING, 1: logging.INFO}


def setup_logging(verbosity=0):
    """
    Attach a single ``RichHandler`` writing to stderr to the ``heisencut`` logger.

    Args:
        verbosity (int): 0 for WARNING, 1 for INFO, 2 or more for DEBUG.
    """
    logger = logging.getLogger("heisencut")
    logger.setLevel(LEVELS.get(verbosity, logging.DEBUG))
    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        handler = RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=True, markup=False)
        handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%X]"))
        logger.addHandler(handler)
    return logger
