"""Resource caps shared by the library and the CLI.

Exhaustive enumerations grow like Bell or squared Catalan numbers, so the
operations that walk them refuse oversized inputs up front rather than
stalling.  ``BIFREE_MAX_SIZE`` overrides every default cap at once.
"""

from __future__ import annotations

import os

ENV_MAX_SIZE = "BIFREE_MAX_SIZE"


class ResourceLimitError(RuntimeError):
    """Raised before starting an enumeration that would exceed a size cap."""


class InsufficientMomentsError(ValueError):
    """Raised when a computation needs moments of higher order than supplied."""


def env_cap(default: int) -> int:
    """A cap, overridden by the BIFREE_MAX_SIZE environment variable."""
    raw = os.environ.get(ENV_MAX_SIZE)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_MAX_SIZE} must be an integer, got {raw!r}") from exc
