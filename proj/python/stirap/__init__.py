"""Atom-BEC entanglement by adiabatic passage through a cavity-fiber-cavity link."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
