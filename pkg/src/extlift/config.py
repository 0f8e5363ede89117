"""Runtime bounds shared across modules."""

from __future__ import annotations

import os

DEFAULT_MAX_ORDER = 512
DEFAULT_MAX_UNKNOWNS = 20000
DEFAULT_CLOSURE_BOUND = 20000
DEFAULT_SECTION_BOUND = 120

_ENV_MAX_ORDER = "EXTLIFT_MAX_ORDER"


def max_order() -> int:
    """Enumeration bound on group order; EXTLIFT_MAX_ORDER overrides the default."""
    raw = os.environ.get(_ENV_MAX_ORDER)
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{_ENV_MAX_ORDER} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{_ENV_MAX_ORDER} must be positive, got {value}")
    return value
