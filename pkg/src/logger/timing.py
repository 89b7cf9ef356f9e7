"""
Timing utilities for the expensive numerical steps.

Provides a context manager that measures a block and logs its duration,
used around certificate scans, W-norm construction, Monte-Carlo batches
and CLI commands.
"""

import logging
import time

from src.logger.logging_config import get_logger

logger = get_logger(__name__)


class Timer:
    """
    Context manager for timing code execution.

    Example:
        with Timer("param_R", scenario="dhk_torus"):
            radius = param_R(scenario.family, scenario.space)

    Logs:
        Console: [2026-03-02 10:15:12] param_R completed (412.07ms)
        JSON: {"message": "param_R completed (412.07ms)", "duration_ms": 412.07,
               "operation": "param_R", "metadata": {"scenario": "dhk_torus"}}
    """

    def __init__(self, operation: str, level: int | None = None, **metadata):
        """
        Parameters:
            operation (str): Name of the operation being timed.
            level (int | None): Logging level, INFO when omitted.
            **metadata: Additional context (e.g., scenario="dhk_torus").
        """
        self.operation = operation
        self.level = level
        self.metadata = metadata
        self.start_time: float = 0.0
        self.duration_ms: float = 0.0

    def __enter__(self):
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        """Stop timing and log, even when the block raised."""
        self.duration_ms = (time.perf_counter() - self.start_time) * 1000

        logger.log(
            self.level if self.level is not None else logging.INFO,
            f"{self.operation} completed ({self.duration_ms:.2f}ms)",
            extra={
                "duration_ms": round(self.duration_ms, 2),
                "operation": self.operation,
                "metadata": self.metadata,
            },
        )

        return False
