"""
Logging for ptchain.

All modules log under the ``ptchain`` namespace to stderr, so stdout stays
reserved for summaries. Besides the standard levels there is INSPECT (35),
used to dump run manifests without turning on every warning.
"""

import logging
import sys
import time
from contextlib import contextmanager
from typing import Dict, Iterator, Optional

INSPECT = 35
logging.addLevelName(INSPECT, "INSPECT")

LEVELS: Dict[str, int] = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "INSPECT": INSPECT,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL,
}
DEFAULT_LOG_LEVEL = "ERROR"

_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

logger = logging.getLogger("ptchain")


def _inspect(self, message, *args, **kwargs):
    if self.isEnabledFor(INSPECT):
        self.log(INSPECT, message, *args, **kwargs)


logging.Logger.inspect = _inspect  # pyright: ignore [reportAttributeAccessIssue]


def resolve_level(name: Optional[str]) -> int:
    """Map a level name to its number; unknown names give ERROR."""
    return LEVELS.get((name or DEFAULT_LOG_LEVEL).strip().upper(), logging.ERROR)


def configure_logging(log_level: Optional[str] = None) -> None:
    """
    (Re)configure the ptchain logger.

    Args:
        log_level: Level name, one of LEVELS. Falls back to PTCHAIN_LOG_LEVEL
                   from the config, then to ERROR.
    """
    from ptchain.core.config import config

    level = resolve_level(log_level or getattr(config, "PTCHAIN_LOG_LEVEL", None))
    logger.setLevel(level)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(_FORMAT, datefmt=_DATE_FORMAT))
    logger.handlers.clear()
    logger.addHandler(handler)
    logger.propagate = False

    logger.debug(f"Log level set to {logging.getLevelName(level)}")


def get_logger(name: str = "") -> logging.Logger:
    """
    Return the logger for a module.

    Args:
        name: Usually ``__name__``; names outside ``ptchain`` get the prefix

    Returns:
        A child of the ``ptchain`` logger
    """
    if not name:
        return logger
    if name == "ptchain" or name.startswith("ptchain."):
        return logging.getLogger(name)
    return logging.getLogger(f"ptchain.{name}")


@contextmanager
def log_elapsed(log: logging.Logger, what: str) -> Iterator[None]:
    """Log the wall-clock time of a block at INFO."""
    started = time.perf_counter()
    yield
    log.info(f"{what} took {time.perf_counter() - started:.3f} s")


configure_logging()
