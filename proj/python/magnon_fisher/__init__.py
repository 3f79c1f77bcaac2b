"""Steady state, stability and Fisher information of the photon-magnon coupling g."""

from ._core import *  # noqa: F401,F403
from ._core import MagnonError, __version__  # noqa: F401
