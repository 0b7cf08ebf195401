"""Degree caps shared by the word/enveloping-algebra layers."""

from __future__ import annotations

import os

# Hard bound for word combinatorics: partition enumeration is p^r.
WORD_DEGREE_LIMIT = 10

# Default cap for enveloping-algebra degrees (3^r tripartition factors
# downstream); overridable via the environment.
DEFAULT_DEGREE_CAP = 8
DEGREE_CAP_ENV = "POISSON_ENV_MAX_DEGREE"


class DegreeCapExceeded(Exception):
    """An operation was asked for a degree above the configured cap."""


def degree_cap() -> int:
    raw = os.environ.get(DEGREE_CAP_ENV)
    if raw is None:
        return DEFAULT_DEGREE_CAP
    try:
        value = int(raw)
    except ValueError:
        raise DegreeCapExceeded(f"{DEGREE_CAP_ENV} must be an integer, got {raw!r}")
    if value < 0:
        raise DegreeCapExceeded(f"{DEGREE_CAP_ENV} must be nonnegative, got {value}")
    return value


def check_degree(degree: int, limit: int | None = None) -> None:
    cap = WORD_DEGREE_LIMIT if limit is None else limit
    if degree > cap:
        raise DegreeCapExceeded(f"degree {degree} exceeds cap {cap}")
