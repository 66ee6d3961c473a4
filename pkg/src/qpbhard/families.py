"""Recursive hard-instance families for increasing local search.

Two families are built, both on n = 2, 6, 10, ... variables:

* ``F``: every increasing path from the origin ends at all-ones and has
  exponential length, whatever the pivot rule.
* ``G``: greedy (best-improvement) search from the origin follows a unique,
  tie-free, exponentially long path.

Each level adds four variables and uses a dominance constant ``M`` derived
from the previous level.  ``MMode.EXACT`` computes it from the exact range
by enumeration, ``MMode.BOUND`` from the sum of absolute coefficients.  The
correctness argument for ``F`` only needs ``M >= max - min + 1``, so the
bound (which is never smaller) keeps every guarantee while staying cheap
for large n.  For ``G`` the bound mode is experimental: the tie-free
property is only claimed for the exact constant.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .config import DEFAULT_LIMITS
from .core import QpbFunction, coefficient_bound, value_table


class Family(str, enum.Enum):
    F = "F"
    G = "G"


class MMode(str, enum.Enum):
    EXACT = "exact"
    BOUND = "bound"


class ExactRangeInfeasible(ValueError):
    """Raised instead of silently switching an exact computation to a bound."""


@dataclass(frozen=True)
class FamilyInstance:
    function: QpbFunction
    family: Family
    n: int
    m_mode: MMode
    # M used at levels k = 2, 6, ..., n - 4
    m_sequence: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.n % 4 != 2:
            raise ValueError(f"family size must be 2 mod 4, got {self.n}")
        if any(m <= 0 for m in self.m_sequence):
            raise ValueError("every M must be positive")
        if len(self.m_sequence) != (self.n - 2) // 4:
            raise ValueError("m_sequence length does not match n")


def exact_range(f: QpbFunction, threshold: int | None = None) -> tuple[int, int]:
    """Exact ``(min f, max f)`` over all ``2**n`` vertices."""
    limit = DEFAULT_LIMITS.exhaustive_n if threshold is None else threshold
    if f.n > limit:
        raise ExactRangeInfeasible(
            f"exact range infeasible: n={f.n} exceeds exhaustive threshold {limit}"
        )
    lo = hi = None
    for _, block in value_table(f):
        bmin, bmax = int(block.min()), int(block.max())
        lo = bmin if lo is None else min(lo, bmin)
        hi = bmax if hi is None else max(hi, bmax)
    return lo, hi


def max_coefficient_bits(inst: FamilyInstance | QpbFunction) -> int:
    """Bit length of the largest-magnitude coefficient."""
    f = inst.function if isinstance(inst, FamilyInstance) else inst
    return max((abs(c).bit_length() for c in f.coefficients()), default=0)


def _check_size(n: int) -> None:
    if not isinstance(n, int) or n < 2 or n % 4 != 2:
        raise ValueError(f"family size must be one of 2, 6, 10, ...; got {n!r}")


def _f_step(f: QpbFunction, M: int) -> QpbFunction:
    n = f.n
    a, b, c, d = n + 1, n + 2, n + 3, n + 4
    linear = list(f.linear) + [-M * n * n, -1, -3, -5 * M * n * n]
    quad = dict(f.quadratic)
    for i in range(1, n + 1):
        quad[(i, a)] = M * (n + 1)
        quad[(i, b)] = -2 * M * n
        quad[(i, c)] = -4
        quad[(i, d)] = M * (n - 1) + 4
    quad[(a, b)] = 2 * M * n * (n + 2)
    quad[(a, c)] = 2
    quad[(b, c)] = 2
    quad[(c, d)] = 6 * M * n * n
    return QpbFunction(n + 4, tuple(linear), quad)


def _g_step(g: QpbFunction, M: int) -> QpbFunction:
    n = g.n
    a, b, c, d = n + 1, n + 2, n + 3, n + 4
    linear = [4 * v for v in g.linear] + [3, 0, 2, 0]
    quad = {p: 4 * v for p, v in g.quadratic.items()}
    for i in range(1, n + 1):
        quad[(i, b)] = -(2 * M + i + 2)
    quad[(a, b)] = 3 * M * n
    quad[(a, c)] = M
    quad[(b, d)] = -4 * M * n
    quad[(c, d)] = 5 * M * n
    return QpbFunction(n + 4, tuple(linear), quad)


def f_constant(f: QpbFunction, m_mode: MMode, threshold: int | None = None) -> int:
    if MMode(m_mode) is MMode.EXACT:
        lo, hi = exact_range(f, threshold)
        return hi - lo + 1
    return coefficient_bound(f) + 1


def g_constant(g: QpbFunction, m_mode: MMode, threshold: int | None = None) -> int:
    if MMode(m_mode) is MMode.EXACT:
        lo, hi = exact_range(g, threshold)
        return 4 * (hi - lo)
    return 4 * coefficient_bound(g)


def _build(family: Family, n: int, m_mode: MMode, threshold: int | None) -> FamilyInstance:
    _check_size(n)
    m_mode = MMode(m_mode)
    limit = DEFAULT_LIMITS.exhaustive_n if threshold is None else threshold
    if m_mode is MMode.EXACT and n - 4 > limit:
        raise ExactRangeInfeasible(
            f"exact range infeasible: building n={n} needs the range of n={n - 4} "
            f"variables, above the exhaustive threshold {limit}; use bound mode"
        )
    if family is Family.F:
        fn, step, const = QpbFunction(2, (1, 1)), _f_step, f_constant
    else:
        fn, step, const = QpbFunction(2, (2, 1)), _g_step, g_constant
    ms = []
    while fn.n < n:
        M = const(fn, m_mode, limit)
        ms.append(M)
        fn = step(fn, M)
    return FamilyInstance(fn, family, n, m_mode, tuple(ms))


def build_f(n: int, m_mode: MMode | str = MMode.EXACT, threshold: int | None = None) -> FamilyInstance:
    return _build(Family.F, n, m_mode, threshold)


def build_g(n: int, m_mode: MMode | str = MMode.EXACT, threshold: int | None = None) -> FamilyInstance:
    return _build(Family.G, n, m_mode, threshold)


def build(family: Family | str, n: int, m_mode: MMode | str | None = None,
          threshold: int | None = None) -> FamilyInstance:
    """Build either family; ``m_mode=None`` picks exact when feasible, else bound."""
    family = Family(family)
    if m_mode is None:
        m_mode = default_m_mode(n, threshold)
    return _build(family, n, MMode(m_mode), threshold)


def default_m_mode(n: int, threshold: int | None = None) -> MMode:
    limit = DEFAULT_LIMITS.exhaustive_n if threshold is None else threshold
    return MMode.EXACT if n - 4 <= limit else MMode.BOUND
