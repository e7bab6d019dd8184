"""Robust signaling for binary-action persuasion."""

from ._core import *  # noqa: F401,F403
from ._core import InstanceError, MixedThreshold

__all__ = [name for name in dir() if not name.startswith("_")]
