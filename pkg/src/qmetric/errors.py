"""Exception types shared across the package.

The CLI maps these onto exit codes: usage problems (bad arguments) exit
with 2, malformed input files with 3, and compute or resource failures
with 4.
"""

from __future__ import annotations


class QMetricError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(QMetricError, ValueError):
    """A function argument violates a documented precondition."""


class ParseError(QMetricError, ValueError):
    """An input document is malformed.

    ``path`` locates the offending field, e.g. ``gates[3].angle.factor``
    for JSON documents or ``line 7`` for tabular inputs.
    """

    def __init__(self, message: str, path: str = "") -> None:
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ResourceLimitError(QMetricError):
    """A computation would exceed a configured size guard."""


class DegenerateDataError(QMetricError):
    """Input data carries no usable signal (e.g. zero total variance)."""
