"""Increasing single-flip local search with pluggable pivot rules.

Only strictly improving flips are taken.  Every run records a full trace
(flipped index, gain, value after the flip) and marks the steps at which
the gain the rule acted on was shared by more than one improving index.

Random choices use SplitMix64 so traces are reproducible on any platform:

    state += 0x9E3779B97F4A7C15            (mod 2**64)
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9  (mod 2**64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB  (mod 2**64)
    out = z ^ (z >> 31)

An index among ``k`` candidates is drawn by rejection: take ``out``, reject
while ``out >= 2**64 - (2**64 % k)``, return ``out % k``.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .core import QpbFunction, Vertex, apply_flip, is_local_max, make_state, origin

_MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int) -> None:
        if not 0 <= seed <= _MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.state = seed

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        if k <= 0:
            raise ValueError("k must be positive")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            r = self.next()
            if r < limit:
                return r % k


class RuleKind(str, enum.Enum):
    FIRST = "first"
    BEST = "best"
    WORST = "worst"
    RANDOM = "random"


ORDERS = ("ascending", "descending")
TIE_BREAKS = ("lowest_index", "highest_index", "random")


@dataclass(frozen=True)
class PivotRule:
    """Which improving flip to take.

    ``order`` applies to FIRST, ``tie_break`` to BEST (WORST only supports
    ``lowest_index``), ``seed`` to RANDOM and to BEST with a random tie-break.
    """

    kind: RuleKind
    order: str = "ascending"
    tie_break: str = "lowest_index"
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", RuleKind(self.kind))
        if self.order not in ORDERS:
            raise ValueError(f"order must be one of {ORDERS}")
        if self.tie_break not in TIE_BREAKS:
            raise ValueError(f"tie_break must be one of {TIE_BREAKS}")
        if self.kind is RuleKind.WORST and self.tie_break != "lowest_index":
            raise ValueError("worst improvement only supports lowest_index tie-break")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    @property
    def name(self) -> str:
        """Short token used in trace headers and CSV files, e.g. ``best-lowest_index``."""
        if self.kind is RuleKind.FIRST:
            return f"first-{self.order}"
        if self.kind is RuleKind.BEST:
            return f"best-{self.tie_break}"
        if self.kind is RuleKind.WORST:
            return "worst-lowest_index"
        return "random"

    @classmethod
    def parse(cls, name: str, seed: int = 0) -> PivotRule:
        kind, _, opt = name.partition("-")
        kind = RuleKind(kind)
        if kind is RuleKind.FIRST:
            return cls(kind, order=opt or "ascending", seed=seed)
        if kind in (RuleKind.BEST, RuleKind.WORST):
            return cls(kind, tie_break=opt or "lowest_index", seed=seed)
        if opt:
            raise ValueError(f"random rule takes no option, got {name!r}")
        return cls(kind, seed=seed)


def first_improvement(order: str = "ascending") -> PivotRule:
    return PivotRule(RuleKind.FIRST, order=order)


def best_improvement(tie_break: str = "lowest_index", seed: int = 0) -> PivotRule:
    return PivotRule(RuleKind.BEST, tie_break=tie_break, seed=seed)


def worst_improvement() -> PivotRule:
    return PivotRule(RuleKind.WORST)


def random_improvement(seed: int) -> PivotRule:
    return PivotRule(RuleKind.RANDOM, seed=seed)


def all_rules(seeds: Iterable[int] = (0,)) -> list[PivotRule]:
    """Every deterministic rule variant plus one random rule per seed."""
    rules = [first_improvement(o) for o in ORDERS]
    rules += [best_improvement(t) for t in TIE_BREAKS]
    rules.append(worst_improvement())
    rules += [random_improvement(s) for s in seeds]
    return rules


class Termination(str, enum.Enum):
    LOCAL_MAX = "LocalMax"
    STEP_LIMIT = "StepLimit"


@dataclass(frozen=True)
class Step:
    index: int
    gain: int
    value_after: int


@dataclass
class Trace:
    start: Vertex
    steps: list[Step] = field(default_factory=list)
    end: Vertex = ()
    terminated: Termination = Termination.LOCAL_MAX
    # 1-based step numbers
    tie_events: list[int] = field(default_factory=list)
    start_value: int | None = None

    @property
    def n_steps(self) -> int:
        return len(self.steps)


def default_step_limit(n: int) -> int:
    return 2 ** (-(-n // 4) + 8)


def _select(gains: list[int], rule: PivotRule, rng: SplitMix64 | None) -> tuple[int, bool] | None:
    """Pick a 0-based position among improving gains; report whether it was tied."""
    improving = [k for k, g in enumerate(gains) if g > 0]
    if not improving:
        return None
    kind = rule.kind
    if kind is RuleKind.FIRST:
        k = improving[0] if rule.order == "ascending" else improving[-1]
        target = gains[k]
        tied = sum(1 for j in improving if gains[j] == target) > 1
        return k, tied
    if kind is RuleKind.RANDOM:
        k = improving[rng.below(len(improving))]
        target = gains[k]
        tied = sum(1 for j in improving if gains[j] == target) > 1
        return k, tied
    if kind is RuleKind.BEST:
        target = max(gains[k] for k in improving)
    else:
        target = min(gains[k] for k in improving)
    cands = [k for k in improving if gains[k] == target]
    if len(cands) == 1:
        return cands[0], False
    if rule.tie_break == "highest_index":
        return cands[-1], True
    if rule.tie_break == "random":
        return cands[rng.below(len(cands))], True
    return cands[0], True


def run_search(
    f: QpbFunction,
    start: Sequence[int] | None = None,
    rule: PivotRule | None = None,
    step_limit: int | None = None,
) -> Trace:
    """Run increasing local search from ``start`` (default: the origin)."""
    start = origin(f.n) if start is None else tuple(start)
    if len(start) != f.n:
        raise ValueError(f"start has length {len(start)}, function has n={f.n}")
    rule = rule or first_improvement()
    step_limit = default_step_limit(f.n) if step_limit is None else step_limit
    if step_limit <= 0:
        raise ValueError("step_limit must be positive")
    rng = SplitMix64(rule.seed) if rule.kind is RuleKind.RANDOM or rule.tie_break == "random" else None

    state = make_state(f, start)
    trace = Trace(start=tuple(state.vertex), start_value=state.value)
    terminated = Termination.LOCAL_MAX
    while True:
        picked = _select(state.gains(), rule, rng)
        if picked is None:
            break
        if len(trace.steps) >= step_limit:
            terminated = Termination.STEP_LIMIT
            break
        k, tied = picked
        gain = state.gain(k + 1)
        apply_flip(state, f, k + 1)
        trace.steps.append(Step(k + 1, gain, state.value))
        if tied:
            trace.tie_events.append(len(trace.steps))
    trace.end = state.point
    trace.terminated = terminated
    return trace


def replay(f: QpbFunction, trace: Trace) -> bool:
    """Re-run the recorded flips and confirm every gain, value, and the endpoint."""
    state = make_state(f, trace.start)
    if trace.start_value is not None and state.value != trace.start_value:
        return False
    prev = state.value
    for step in trace.steps:
        if step.gain <= 0 or state.gain(step.index) != step.gain:
            return False
        apply_flip(state, f, step.index)
        if state.value != step.value_after or state.value <= prev:
            return False
        prev = state.value
    if state.point != tuple(trace.end):
        return False
    if trace.terminated is Termination.LOCAL_MAX and not is_local_max(f, trace.end):
        return False
    return True


@dataclass(frozen=True)
class StepCountRow:
    n: int
    rule: str
    steps: int
    end: Vertex
    ties: int
    bits: int


class StepLimitReached(RuntimeError):
    pass


def step_count_table(family, n_list: Sequence[int], rules: Sequence[PivotRule],
                     m_mode=None, step_limit: int | None = None) -> list[StepCountRow]:
    """One origin run per ``(n, rule)``, in ``n_list`` then ``rules`` order."""
    from .families import build, max_coefficient_bits

    rows = []
    for n in n_list:
        inst = build(family, n, m_mode)
        bits = max_coefficient_bits(inst)
        for rule in rules:
            trace = run_search(inst.function, None, rule, step_limit)
            if trace.terminated is not Termination.LOCAL_MAX:
                raise StepLimitReached(f"n={n} rule={rule.name}: step limit reached after {trace.n_steps} steps")
            rows.append(StepCountRow(n, rule.name, trace.n_steps, trace.end, len(trace.tie_events), bits))
    return rows
