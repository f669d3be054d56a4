"""Moments of the variance-gamma distribution."""

from ._core import *  # noqa: F401,F403
from ._core import (
    ConvergenceError,
    DomainError,
    EvalResult,
    VGParams,
    moment,
)

__version__ = "0.1.0"
