"""Noisy Gaussian resources for continuous-variable teleportation networks."""

from ._core import *  # noqa: F401,F403
from ._core import ResourceFamily, ResourceSpec

__version__ = "0.1.0"
__all__ = ["ResourceFamily", "ResourceSpec"]
