"""Resource budgets, overridable through FIBWORD_* environment variables."""

import os

_DEFAULTS = {
    "MODULUS_LIMIT": 10_000_000,   # largest p**lambda the brute-force scan accepts
    "CENSUS_NODES": 5_000_000,     # backtracking nodes per square-free census
    "COVERAGE_CELLS": 20_000_000,  # bitmap cells (b**k) for coverage profiles
    "SP_TOTAL_MAXLEN": 400,        # word length cap for scattered palindrome totals
    "SP_LENGTH_MAXLEN": 64,        # cap for the per-length decomposition
}


def budget(name: str) -> int:
    """Return the budget `name`, honoring a FIBWORD_<name> override."""
    raw = os.environ.get("FIBWORD_" + name)
    if raw is None:
        return _DEFAULTS[name]
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"FIBWORD_{name} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"FIBWORD_{name} must be positive, got {value}")
    return value
