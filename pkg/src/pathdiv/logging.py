"""
Logging utilities for Pathdiv.

Provides leveled logging to stderr and structured JSON-lines tracing
for scans (one record per simplex or colored vertex).
"""

import json
import logging
import sys
import threading
from pathlib import Path
from typing import IO, Any

from pathdiv.config import get_settings

_ROOT = "pathdiv"


class SolverLogger:
    """Logger that keeps stdout free for JSON/CSV output."""

    def __init__(self, name: str):
        self.name = name
        self.logger = logging.getLogger(f"{_ROOT}.{name}")

        root = logging.getLogger(_ROOT)
        if not root.handlers:
            handler = logging.StreamHandler(sys.stderr)
            formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
            handler.setFormatter(formatter)
            root.addHandler(handler)
            root.setLevel(get_settings().log_level_number)
            root.propagate = False

    def _log(self, level: int, message: str, details: str | None) -> None:
        self.logger.log(level, message)
        if details:
            self.logger.debug(details)

    def debug(self, message: str, details: str | None = None) -> None:
        """Log debug message."""
        self._log(logging.DEBUG, message, details)

    def info(self, message: str, details: str | None = None) -> None:
        """Log info message."""
        self._log(logging.INFO, message, details)

    def warning(self, message: str, details: str | None = None) -> None:
        """Log warning message."""
        self._log(logging.WARNING, message, details)

    def error(self, message: str, details: str | None = None) -> None:
        """Log error message."""
        self._log(logging.ERROR, message, details)

    def critical(self, message: str, details: str | None = None) -> None:
        """Log critical message."""
        self._log(logging.CRITICAL, message, details)


def get_logger(name: str) -> SolverLogger:
    """Get a logger instance."""
    return SolverLogger(name)


def set_log_level(level: str | int) -> None:
    """Change the level of every Pathdiv logger."""
    logging.getLogger(_ROOT).setLevel(level)


class TraceSink:
    """
    Append-only JSON-lines writer for scan traces.

    Records are written with sorted keys so two runs over the same input
    produce identical files.
    """

    def __init__(self, path: Path):
        self.path = path
        self._lock = threading.Lock()
        self._handle: IO[str] | None = None

    def __enter__(self) -> "TraceSink":
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._handle = open(self.path, "w", encoding="utf-8")
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()

    def emit(self, record: dict[str, Any]) -> None:
        """Write one record."""
        if self._handle is None:
            raise RuntimeError(f"Trace sink {self.path} is not open")
        line = json.dumps(record, sort_keys=True, separators=(",", ":"))
        with self._lock:
            self._handle.write(line + "\n")

    def close(self) -> None:
        """Flush and close the underlying file."""
        if self._handle is not None:
            self._handle.close()
            self._handle = None
