"""Size caps and seeds shared by every exponential routine.

Each value can be overridden with an environment variable carrying the
``WIDTHDUAL_`` prefix, e.g. ``WIDTHDUAL_GROUND_CAP=12``.
"""

import os


class CapExceeded(ValueError):
    """An instance is larger than the configured cap for an exhaustive routine."""


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get("WIDTHDUAL_" + name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"WIDTHDUAL_{name} must be an integer, got {raw!r}") from None


GROUND_CAP = _env_int("GROUND_CAP", 16)
ENUMERATION_CAP = _env_int("ENUMERATION_CAP", 10)
CLOSURE_CAP = _env_int("CLOSURE_CAP", 8)
SEARCH_CAP = _env_int("SEARCH_CAP", 10)
DUALISING_CAP = _env_int("DUALISING_CAP", 4)
SEED = _env_int("SEED", 0)


def check_cap(value: int, cap: int, what: str) -> None:
    if value > cap:
        raise CapExceeded(f"{what}: size {value} exceeds cap {cap}")
