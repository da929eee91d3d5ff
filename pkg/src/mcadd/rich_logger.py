"""mcadd: mcadd/rich_logger.py
A common logger writing through rich to standard error.
"""

import logging

from rich.console import Console
from rich.logging import RichHandler


cons = Console(stderr=True)
rich_handler = RichHandler(console=cons, show_path=False)
logger = logging.getLogger("mcadd")


def create_logger(verbosity="info"):
    """Helper function to setup logging for the given verbosity level.
    Results go to standard output, so the handler is always bound to
    the standard error console."""
    global cons
    global rich_handler
    cons = Console(stderr=True)
    rich_handler = RichHandler(console=cons, show_path=False, show_time=False)
    logging.basicConfig(
        format="%(message)s",
        datefmt="%H:%M:%S",
        level=getattr(logging, verbosity.upper()),
        handlers=[rich_handler],
        force=True,
    )
    logger.setLevel(getattr(logging, verbosity.upper()))
