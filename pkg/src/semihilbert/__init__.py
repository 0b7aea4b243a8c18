"""Seminorms, numerical radii and Crawford numbers for operators on ``(C^n, <A., .>)``."""

from .errors import *  # noqa: F401,F403
from .space import SemiInnerSpace, validate_positive

__version__ = "0.1.0"
