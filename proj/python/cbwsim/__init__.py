"""Transfer-matrix simulation of coupled Mach-Zehnder interferometer chains."""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
