"""
Logging package: structured JSON file logs, console output and timing.
"""

from .logging_config import StructuredFormatter, get_logger, setup_logging
from .timing import Timer

__all__ = [
    # logging_config.py
    "StructuredFormatter",
    "get_logger",
    "setup_logging",
    # timing.py
    "Timer",
]
