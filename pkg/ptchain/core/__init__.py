"""
Core functionality for ptchain.
"""
from ptchain.core.config import config, get_setting
from ptchain.core.logging import INSPECT, configure_logging, get_logger, log_elapsed

__all__ = [
    "config",
    "get_setting",
    "get_logger",
    "configure_logging",
    "log_elapsed",
    "INSPECT",
]
