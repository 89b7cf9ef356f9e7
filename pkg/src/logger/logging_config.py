"""
Logging configuration for the imprecise-bandits toolkit.

Provides structured JSON logging to files and human-readable console output.
The console handler writes to stderr; stdout carries only the output paths
the CLI prints.
"""

import json
import logging
import sys
import traceback
from datetime import datetime
from pathlib import Path


class StructuredFormatter(logging.Formatter):
    """
    JSON formatter for structured logging.

    Converts log records to JSON with timestamp, level, logger name, message,
    and the optional timing fields attached by `Timer` (duration_ms,
    operation, metadata) plus exception text.
    """

    def format(self, record: logging.LogRecord) -> str:
        """
        Format a log record as a JSON string.

        Parameters:
            record (logging.LogRecord): The log record to format.

        Returns:
            str: JSON-formatted log entry.
        """
        log_data = {
            "timestamp": datetime.fromtimestamp(record.created).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }

        duration_ms = getattr(record, "duration_ms", None)
        if duration_ms is not None:
            log_data["duration_ms"] = duration_ms

        operation = getattr(record, "operation", None)
        if operation is not None:
            log_data["operation"] = operation

        metadata = getattr(record, "metadata", None)
        if metadata is not None:
            log_data["metadata"] = metadata

        if record.exc_info:
            log_data["exception"] = "".join(
                traceback.format_exception(*record.exc_info)
            )

        return json.dumps(log_data, default=str)


def setup_logging(level: str = "INFO", log_dir: str | Path = "logs") -> Path:
    """
    Initialize logging for a CLI run.

    Sets up two handlers:
    1. Console handler on stderr: `[YYYY-MM-DD HH:MM:SS] message` at `level`
    2. File handler: structured JSON saved to logs/ib_YYYYMMDD_HHMMSS.log

    Parameters:
        level (str): Console log level name.
        log_dir (str | Path): Directory for JSON log files, created if missing.

    Returns:
        Path: The JSON log file path.
    """
    logs_dir = Path(log_dir)
    logs_dir.mkdir(parents=True, exist_ok=True)

    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    log_filename = logs_dir / f"ib_{timestamp}.log"

    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG)
    root_logger.handlers.clear()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(getattr(logging, level.upper(), logging.INFO))
    console_format = logging.Formatter("[%(asctime)s] %(message)s", "%Y-%m-%d %H:%M:%S")
    console_handler.setFormatter(console_format)
    root_logger.addHandler(console_handler)

    file_handler = logging.FileHandler(log_filename, mode="a", encoding="utf-8")
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(StructuredFormatter())
    root_logger.addHandler(file_handler)

    return log_filename


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance for a module.

    Parameters:
        name (str): The name of the module (typically __name__).

    Returns:
        logging.Logger: Logger instance.
    """
    return logging.getLogger(name)
