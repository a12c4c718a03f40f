"""Float tolerances, overridable through ``FREEPLANAR_PRECISION``."""

from __future__ import annotations

import os

ENV_VAR = "FREEPLANAR_PRECISION"


def tolerance(default: float) -> float:
    """Return the tolerance from the environment, falling back to *default*."""
    raw = os.environ.get(ENV_VAR)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = float(raw)
    except ValueError:
        return default
    return value if value > 0 else default
