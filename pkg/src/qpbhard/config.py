"""Size thresholds shared by the exhaustive routines."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    # exact max/min by enumeration; build ops need n - 4 <= this
    exhaustive_n: int = 22
    # improvement-graph BFS and local-maxima enumeration
    oracle_n: int = 20
    # inner size m = n - 4 for the claim and table checkers
    claims_inner_n: int = 14


DEFAULT_LIMITS = Limits()
