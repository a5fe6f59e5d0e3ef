"""Proper splittings of closed-range matrices."""

from ._psplit import *  # noqa: F401,F403
from ._psplit import Error


def error_code(exc: Error) -> str:
    """Stable code of a psplit error, such as ``"NotProper"``."""
    return str(exc).split(":", 1)[0]
