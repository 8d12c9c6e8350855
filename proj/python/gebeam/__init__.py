"""Geometrically exact Timoshenko beam dynamics."""

from ._gebeam import *  # noqa: F401,F403
from ._gebeam import __doc__  # noqa: F401

__version__ = "0.1.0"
