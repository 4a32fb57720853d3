"""
Logging Setup
Diagnostics go to stderr through rich, results go to stdout
"""
import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

ROOT_LOGGER = 'cluster_analyzer'


def get_logger(name: str) -> logging.Logger:
    """Return a logger inside the package hierarchy"""
    if name == ROOT_LOGGER or name.startswith(ROOT_LOGGER + '.'):
        return logging.getLogger(name)
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")


def setup_logging(verbose: bool = False, console: Optional[Console] = None) -> logging.Logger:
    """
    Attach a single RichHandler to the package logger

    Args:
        verbose: DEBUG level when True, WARNING otherwise
        console: Console to log to (default: a stderr console)

    Returns:
        The package root logger
    """
    root = logging.getLogger(ROOT_LOGGER)
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)

    for handler in list(root.handlers):
        if isinstance(handler, RichHandler):
            root.removeHandler(handler)

    handler = RichHandler(
        console=console or Console(stderr=True),
        show_path=False,
        show_time=False,
        markup=False,
    )
    handler.setFormatter(logging.Formatter("%(message)s"))
    root.addHandler(handler)
    root.propagate = False
    return root
