"""Global enumeration caps."""

from __future__ import annotations

import os

DEFAULT_MAX_ORDER = 4096
ENDOMORPHISM_MAX_ORDER = 256
HOM_MAX_CANDIDATES = 1_000_000

_override: int | None = None


def max_order() -> int:
    if _override is not None:
        return _override
    env = os.environ.get("NILRING_MAX_ORDER")
    if env:
        try:
            value = int(env)
        except ValueError:
            return DEFAULT_MAX_ORDER
        if value > 0:
            return value
    return DEFAULT_MAX_ORDER


def set_max_order(value: int | None) -> None:
    global _override
    if value is not None and value <= 0:
        raise ValueError("max order must be positive")
    _override = value
