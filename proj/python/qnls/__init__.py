"""Pseudospectral toolkit for the 1d quintic NLS  i u_t + u_xx +- |u|^4 u = 0."""

from ._core import *  # noqa: F401,F403
from ._core import (
    AccuracyError,
    ConfigError,
    DomainError,
    FitRejected,
    NumericError,
    QnlsError,
    ResolutionError,
    UndefinedInputError,
)

__version__ = "0.1.0"


def field(grid, values, time=0.0):
    """Field from a callable of x or an array of samples."""
    if callable(values):
        values = values(grid.x)
    return Field(grid, values, time)
