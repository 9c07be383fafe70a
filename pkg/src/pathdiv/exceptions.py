"""
Exception hierarchy for Pathdiv.

The CLI maps each family to a process exit code.
"""

from typing import Any


class PathDivError(Exception):
    """Base class for all Pathdiv errors."""


class InputError(PathDivError, ValueError):
    """Malformed or out-of-range input: instances, divisions, knife vectors."""


class CertificateError(PathDivError, RuntimeError):
    """A produced division failed its own certification."""


class TheoremViolation(PathDivError, RuntimeError):
    """
    A search that the existence theorems guarantee to succeed came up empty.

    Either the theorem is false or the implementation is wrong; the attached
    diagnostic carries enough context to reproduce the run.
    """

    def __init__(self, message: str, diagnostic: dict[str, Any] | None = None):
        super().__init__(message)
        self.diagnostic = diagnostic or {}
