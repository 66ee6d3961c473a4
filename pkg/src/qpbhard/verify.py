"""Mechanized checks of the structural properties behind the F and G families.

Every predicate is evaluated from the generated coefficients through the
core primitives, never from closed-form constants, so a wrong constant in
a hand derivation cannot make a check pass.  Checks are exhaustive over
their guard regions, which limits them to small inner sizes.

Notation used below: an F instance on ``N = m + 4`` variables is read as
``(x, a, b, c, d)`` with prefix ``x`` in ``{0,1}^m`` and ``S = sum(x)``.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections.abc import Callable, Iterator
from dataclasses import dataclass

from .config import DEFAULT_LIMITS
from .core import (
    QpbFunction,
    Vertex,
    discrete_derivative,
    eval_at,
    flip_gain,
    origin,
    restrict,
)
from .families import Family, FamilyInstance, MMode, build_f, max_coefficient_bits
from .oracle import exceeds_quarter_power
from .search import Termination, best_improvement, run_search


class ClaimId(str, enum.Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    C5 = "C5"
    C6 = "C6"
    C7 = "C7"
    C8 = "C8"
    TABLE1 = "TableColumn1"
    TABLE2 = "TableColumn2"
    TABLE3 = "TableColumn3"
    TABLE4 = "TableColumn4"
    TABLE5 = "TableColumn5"
    TABLE6 = "TableColumn6"
    LEMMA1 = "Lemma1"
    THM2_TIES = "Thm2Ties"
    THM2_ENDPOINT = "Thm2Endpoint"


CLAIMS = [ClaimId(f"C{k}") for k in range(1, 9)]
TABLE_COLUMNS = [ClaimId(f"TableColumn{k}") for k in range(1, 7)]


class CheckTooLarge(ValueError):
    pass


@dataclass
class ClaimReport:
    claim_id: ClaimId
    n: int
    checked_points: int
    counterexample: Vertex | None
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        s = f"{self.claim_id.value} n={self.n} points={self.checked_points} {status}"
        if self.counterexample is not None:
            s += " counterexample=" + "".join(map(str, self.counterexample))
        if self.detail:
            s += f" ({self.detail})"
        return s


def _split(inst: FamilyInstance, threshold: int | None) -> tuple[QpbFunction, int]:
    if inst.family is not Family.F:
        raise ValueError("claim checks apply to F-family instances")
    if inst.n < 6:
        raise ValueError("claim checks need n >= 6")
    m = inst.n - 4
    limit = DEFAULT_LIMITS.claims_inner_n if threshold is None else threshold
    if m > limit:
        raise CheckTooLarge(f"inner size {m} exceeds claim-check threshold {limit}")
    return inst.function, m


def _points(m: int, tail: tuple, zero_prefix: bool = False) -> Iterator[Vertex]:
    """Vertices ``(x, tail)`` with ``None`` entries of ``tail`` left free."""
    prefixes = [origin(m)] if zero_prefix else itertools.product((0, 1), repeat=m)
    free = [k for k, t in enumerate(tail) if t is None]
    for x in prefixes:
        for vals in itertools.product((0, 1), repeat=len(free)):
            t = list(tail)
            for k, v in zip(free, vals):
                t[k] = v
            yield tuple(x) + tuple(t)


def _claim_predicate(claim: ClaimId, f: QpbFunction, m: int) -> tuple[tuple, bool, Callable[[Vertex], bool]]:
    a, b, c, d = m + 1, m + 2, m + 3, m + 4

    def gain(x, i):
        return flip_gain(f, x, i)

    if claim is ClaimId.C1:
        # x_a: 0 -> 1 improves iff the whole prefix is ones
        return (0, 0, 0, 0), False, lambda x: (gain(x, a) > 0) == all(x[:m])
    if claim is ClaimId.C2:
        return (None, 0, 0, 0), False, lambda x: (gain(x, b) > 0) == (x[a - 1] == 1)
    if claim is ClaimId.C3:
        return (None, None, 0, 0), False, lambda x: (gain(x, c) > 0) == (
            x[a - 1] == 1 and x[b - 1] == 1 and not any(x[:m])
        )
    if claim is ClaimId.C4:
        return (None, None, None, 0), False, lambda x: (gain(x, d) > 0) == (x[c - 1] == 1)
    if claim is ClaimId.C5:
        return (1, 1, None, None), False, lambda x: gain(x, a) <= 0 and gain(x, b) <= 0
    if claim is ClaimId.C6:
        return (None, None, 1, 1), False, lambda x: gain(x, c) <= 0 and gain(x, d) <= 0
    if claim is ClaimId.C7:
        return (1, 1, None, None), True, lambda x: (
            not any(gain(x, i) > 0 for i in range(1, m + 1)) or x[d - 1] == 1
        )
    raise ValueError(f"no point predicate for {claim}")


def check_claim(inst: FamilyInstance, claim: ClaimId | str, threshold: int | None = None) -> ClaimReport:
    """Check one of C1..C8 exhaustively on an F instance of size ``m + 4``."""
    claim = ClaimId(claim)
    if claim not in CLAIMS:
        raise ValueError(f"{claim} is not a path claim")
    f, m = _split(inst, threshold)

    if claim is ClaimId.C8:
        inner = restrict(f, m)
        constant = None
        count = 0
        for x in itertools.product((0, 1), repeat=m):
            count += 1
            full = tuple(x) + (1, 1, 1, 1)
            diff = eval_at(f, full) - eval_at(inner, x)
            if constant is None:
                constant = diff
            elif diff != constant:
                return ClaimReport(claim, inst.n, count, full, False, f"difference {diff} != {constant}")
        return ClaimReport(claim, inst.n, count, None, True, f"constant={constant}")

    tail, zero_prefix, pred = _claim_predicate(claim, f, m)
    count = 0
    for x in _points(m, tail, zero_prefix):
        count += 1
        if not pred(x):
            return ClaimReport(claim, inst.n, count, x, False)
    return ClaimReport(claim, inst.n, count, None, True)


def claim_holds_at(inst: FamilyInstance, claim: ClaimId | str, x: Vertex) -> bool:
    """Re-evaluate a point claim at one vertex using plain evaluation differences."""
    claim = ClaimId(claim)
    f, m = inst.function, inst.n - 4
    if claim is ClaimId.C8:
        inner = restrict(f, m)
        base = eval_at(f, origin(m) + (1, 1, 1, 1)) - eval_at(inner, origin(m))
        return eval_at(f, x) - eval_at(inner, x[:m]) == base

    def gain(y, i):
        y2 = list(y)
        y2[i - 1] ^= 1
        return eval_at(f, y2) - eval_at(f, y)

    a, b, c, d = m + 1, m + 2, m + 3, m + 4
    if claim is ClaimId.C1:
        return (gain(x, a) > 0) == all(x[:m])
    if claim is ClaimId.C2:
        return (gain(x, b) > 0) == (x[a - 1] == 1)
    if claim is ClaimId.C3:
        return (gain(x, c) > 0) == (x[a - 1] == x[b - 1] == 1 and not any(x[:m]))
    if claim is ClaimId.C4:
        return (gain(x, d) > 0) == (x[c - 1] == 1)
    if claim is ClaimId.C5:
        return gain(x, a) <= 0 and gain(x, b) <= 0
    if claim is ClaimId.C6:
        return gain(x, c) <= 0 and gain(x, d) <= 0
    if claim is ClaimId.C7:
        return not any(gain(x, i) > 0 for i in range(1, m + 1)) or x[d - 1] == 1
    raise ValueError(f"no point predicate for {claim}")


# Table of derivative signs.  Each column is a point class, each row a variable
# group.  A cell holds (sign test on the derivative, printed closed form).  The
# sign test receives (delta, S, m, dfn) where dfn is the inner derivative for
# prefix rows; the printed form receives (M, m, S, dfn).

def _pos(v, S, m, dfn):
    return v > 0


def _neg(v, S, m, dfn):
    return v < 0


_TABLE_TAILS = {
    ClaimId.TABLE1: ((0, 0, 0, 0), False),
    ClaimId.TABLE2: ((1, 0, 0, 0), False),
    ClaimId.TABLE3: ((1, 1, 0, 0), False),
    ClaimId.TABLE4: ((1, 1, 0, 0), True),
    ClaimId.TABLE5: ((1, 1, 1, 0), True),
    ClaimId.TABLE6: ((1, 1, 1, 1), False),
}

_ROWS = ("x_i", "x_{n+1}", "x_{n+2}", "x_{n+3}", "x_{n+4}")

_CELLS = {
    ClaimId.TABLE1: (
        (lambda v, S, m, dfn: v == dfn, lambda M, n, S, dfn: dfn),
        (lambda v, S, m, dfn: (v > 0) == (S == m), lambda M, n, S, dfn: -M * (n * n - (n + 1) * S)),
        (_neg, lambda M, n, S, dfn: -1 - 2 * M * n * S),
        (_neg, lambda M, n, S, dfn: -3 - 4 * S),
        (_neg, lambda M, n, S, dfn: -5 * M * n * n + 4 * S + M * (n - 1) * S),
    ),
    ClaimId.TABLE2: (
        (_pos, lambda M, n, S, dfn: M * (n + 1) + dfn),
        (lambda v, S, m, dfn: (v > 0) == (S == m), lambda M, n, S, dfn: -M * n * n + M * (n + 1) * S),
        (_pos, lambda M, n, S, dfn: -1 - 2 * M * n * S + 2 * M * n * (n + 2)),
        (_neg, lambda M, n, S, dfn: -1 - 4 * S),
        (_neg, lambda M, n, S, dfn: -5 * M * n * n + 4 * S + M * (n - 1) * S),
    ),
    ClaimId.TABLE3: (
        (_neg, lambda M, n, S, dfn: M * (1 - n) + dfn),
        (_pos, lambda M, n, S, dfn: M * (n + 1) * S + M * n * (n + 4)),
        (_pos, lambda M, n, S, dfn: -1 - 2 * M * n * S + 2 * M * n * (n + 2)),
        (lambda v, S, m, dfn: (v < 0) == (S != 0), lambda M, n, S, dfn: 1 - 4 * S),
        (_neg, lambda M, n, S, dfn: -5 * M * n * n + 4 * S + M * (n - 1) * S),
    ),
    ClaimId.TABLE4: (
        (_neg, lambda M, n, S, dfn: M * (1 - n) + dfn),
        (_pos, lambda M, n, S, dfn: M * n * (n + 4)),
        (_pos, lambda M, n, S, dfn: -1 + 4 * M + 2 * M * n),
        (lambda v, S, m, dfn: v == 1, lambda M, n, S, dfn: 1),
        (_neg, lambda M, n, S, dfn: -5 * M * n * n),
    ),
    ClaimId.TABLE5: (
        (_neg, lambda M, n, S, dfn: M * (1 - n) + dfn - 4),
        (_pos, lambda M, n, S, dfn: M * n * (n + 4) + 2),
        (_pos, lambda M, n, S, dfn: 2 * M * n * (n + 2) + 1),
        (lambda v, S, m, dfn: v == 1, lambda M, n, S, dfn: 1),
        (_pos, lambda M, n, S, dfn: M * n * n),
    ),
    ClaimId.TABLE6: (
        (lambda v, S, m, dfn: (v > 0) - (v < 0) == (dfn > 0) - (dfn < 0), lambda M, n, S, dfn: dfn),
        (_pos, lambda M, n, S, dfn: M * (n + 4) + M * (n + 1) * S + 2),
        (_pos, lambda M, n, S, dfn: 2 * M * n * (n + 2) - 2 * M * n * S + 1),
        (_pos, lambda M, n, S, dfn: 6 * M * n * n + 1 - 4 * S),
        (_pos, lambda M, n, S, dfn: M * n * n + 4 * S + M * (n - 1) * S),
    ),
}


def check_table_column(inst: FamilyInstance, column: ClaimId | str, threshold: int | None = None) -> ClaimReport:
    """Check every sign cell of one column over all admissible prefixes.

    The printed closed forms are compared too; rows where they disagree with
    the coefficient-derived derivative are listed in ``detail`` but do not
    affect ``passed``.
    """
    column = ClaimId(column)
    f, m = _split(inst, threshold)
    inner = restrict(f, m)
    M = inst.m_sequence[-1]
    tail, zero_prefix = _TABLE_TAILS[column]
    cells = _CELLS[column]
    printed_off: set[str] = set()
    count = 0
    for x in _points(m, tail, zero_prefix):
        count += 1
        S = sum(x[:m])
        for i in range(1, m + 1):
            v = discrete_derivative(f, x, i)
            dfn = discrete_derivative(inner, x[:m], i)
            sign_ok, printed = cells[0]
            if not sign_ok(v, S, m, dfn):
                return ClaimReport(column, inst.n, count, x, False, f"row x_{i}: derivative {v}")
            if printed(M, m, S, dfn) != v:
                printed_off.add(_ROWS[0])
        for r in range(1, 5):
            v = discrete_derivative(f, x, m + r)
            sign_ok, printed = cells[r]
            if not sign_ok(v, S, m, None):
                return ClaimReport(column, inst.n, count, x, False, f"row {_ROWS[r]}: derivative {v}")
            if printed(M, m, S, None) != v:
                printed_off.add(_ROWS[r])
    detail = ""
    if printed_off:
        rows = ", ".join(r for r in _ROWS if r in printed_off)
        detail = f"printed closed form differs from coefficients in rows: {rows}"
    return ClaimReport(column, inst.n, count, None, True, detail)


def check_table_signs(inst: FamilyInstance, threshold: int | None = None) -> list[ClaimReport]:
    return [check_table_column(inst, col, threshold) for col in TABLE_COLUMNS]


def check_all_claims(inst: FamilyInstance, threshold: int | None = None) -> list[ClaimReport]:
    return [check_claim(inst, c, threshold) for c in CLAIMS]


@dataclass(frozen=True)
class GrowthPoint:
    n: int
    bits: int
    ratio: float


def bit_growth_profile(n_max: int, m_mode: MMode | str = MMode.BOUND) -> tuple[list[GrowthPoint], float]:
    """Largest coefficient bit length per size and the least-squares constant
    ``c`` in ``bits ~ c * n * log2(n)``."""
    if n_max < 2 or n_max % 4 != 2:
        raise ValueError(f"n_max must be 2 mod 4, got {n_max}")
    sizes = [2] if n_max == 2 else list(range(6, n_max + 1, 4))
    pts = []
    for n in sizes:
        bits = max_coefficient_bits(build_f(n, m_mode))
        pts.append(GrowthPoint(n, bits, bits / (n * math.log2(n))))
    scale = [n * math.log2(n) for n in sizes]
    c = sum(p.bits * s for p, s in zip(pts, scale)) / sum(s * s for s in scale)
    return pts, c


def check_bit_growth(n_max: int, m_mode: MMode | str = MMode.BOUND, slack: float = 1.5) -> ClaimReport:
    """Coefficient size stays within ``slack * c * n log2 n`` for a fitted ``c``
    and no consecutive ratio jumps by more than ``slack``."""
    pts, c = bit_growth_profile(n_max, m_mode)
    bounded = all(p.bits <= slack * c * p.n * math.log2(p.n) for p in pts)
    steady = all(q.ratio <= slack * p.ratio for p, q in zip(pts, pts[1:]))
    detail = f"c={c:.4f} bits={[p.bits for p in pts]} max_ratio={max(p.ratio for p in pts):.4f}"
    return ClaimReport(ClaimId.LEMMA1, n_max, len(pts), None, bounded and steady, detail)


def greedy_endpoint(n: int) -> Vertex:
    """All ones except zeros at positions 4, 8, ..., n - 2."""
    zeros = set(range(4, n - 1, 4))
    return tuple(0 if k in zeros else 1 for k in range(1, n + 1))


def check_greedy(inst: FamilyInstance, step_limit: int | None = None) -> tuple[ClaimReport, ClaimReport]:
    """Greedy run from the origin: no ties, expected endpoint, more than 2**(n/4) steps."""
    if inst.family is not Family.G:
        raise ValueError("greedy checks apply to G-family instances")
    f = inst.function
    trace = run_search(f, None, best_improvement(), step_limit)
    note = "" if inst.m_mode is MMode.EXACT else "bound mode (experimental)"

    tie_x = None
    if trace.tie_events:
        x = list(trace.start)
        for step in trace.steps[: trace.tie_events[0] - 1]:
            x[step.index - 1] ^= 1
        tie_x = tuple(x)
    ties = ClaimReport(ClaimId.THM2_TIES, inst.n, trace.n_steps, tie_x, not trace.tie_events,
                       f"ties={len(trace.tie_events)}" + (f"; {note}" if note else ""))

    expected = greedy_endpoint(inst.n)
    ok = (
        trace.terminated is Termination.LOCAL_MAX
        and trace.end == expected
        and exceeds_quarter_power(trace.n_steps, inst.n, strict=True)
    )
    end = ClaimReport(ClaimId.THM2_ENDPOINT, inst.n, trace.n_steps, None if ok else trace.end, ok,
                      f"steps={trace.n_steps} terminated={trace.terminated.value}")
    return ties, end
