"""Brute-force ground truth for small instances.

Edges of the improvement graph are read off a full table of function
values (built by enumeration), never from derivative caches, so these
results are an independent check on the search engine.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from .config import DEFAULT_LIMITS
from .core import (
    QpbFunction,
    Vertex,
    code_vertex,
    full_value_table,
    origin,
    vertex_code,
)


class OracleTooLarge(ValueError):
    pass


class Unreachable(ValueError):
    pass


def _check(f: QpbFunction, threshold: int | None) -> None:
    limit = DEFAULT_LIMITS.oracle_n if threshold is None else threshold
    if f.n > limit:
        raise OracleTooLarge(f"n={f.n} exceeds oracle threshold {limit}")


def _improving_codes(values, code: int, n: int) -> list[int]:
    v = values[code]
    return [code ^ (1 << k) for k in range(n) if values[code ^ (1 << k)] > v]


def enumerate_local_maxima(f: QpbFunction, threshold: int | None = None) -> list[Vertex]:
    """Every vertex with no strictly better Hamming neighbour, by code order."""
    _check(f, threshold)
    values = full_value_table(f).tolist()
    n = f.n
    out = []
    for code in range(1 << n):
        v = values[code]
        if all(values[code ^ (1 << k)] <= v for k in range(n)):
            out.append(code_vertex(code, n))
    return out


@dataclass
class ImprovementGraphSummary:
    n: int
    reachable_count: int
    reachable_sinks: list[Vertex]
    shortest_to: dict[Vertex, int] = field(repr=False)
    longest_to: dict[Vertex, int] = field(default_factory=dict, repr=False)


def reachable_from(f: QpbFunction, start: Sequence[int] | None = None,
                   threshold: int | None = None) -> ImprovementGraphSummary:
    """BFS over improving edges, plus longest-path depths by DP over the DAG."""
    _check(f, threshold)
    n = f.n
    start = origin(n) if start is None else tuple(start)
    if len(start) != n:
        raise ValueError(f"start has length {len(start)}, function has n={n}")
    values = full_value_table(f).tolist()
    s = vertex_code(start)
    depth = {s: 0}
    order = [s]
    sinks = []
    queue = deque([s])
    succ: dict[int, list[int]] = {}
    while queue:
        c = queue.popleft()
        nxt = _improving_codes(values, c, n)
        succ[c] = nxt
        if not nxt:
            sinks.append(c)
        for y in nxt:
            if y not in depth:
                depth[y] = depth[c] + 1
                order.append(y)
                queue.append(y)

    # values strictly increase along edges, so sorting by value is a topological order
    longest = {s: 0}
    for c in sorted(depth, key=lambda c: values[c]):
        if c not in longest:
            continue
        for y in succ[c]:
            if longest.get(y, -1) < longest[c] + 1:
                longest[y] = longest[c] + 1

    return ImprovementGraphSummary(
        n=n,
        reachable_count=len(depth),
        reachable_sinks=[code_vertex(c, n) for c in sorted(sinks)],
        shortest_to={code_vertex(c, n): depth[c] for c in order},
        longest_to={code_vertex(c, n): longest[c] for c in order},
    )


def shortest_increasing_path_length(f: QpbFunction, start: Sequence[int] | None,
                                    target: Sequence[int], threshold: int | None = None) -> int:
    summary = reachable_from(f, start, threshold)
    target = tuple(target)
    if target not in summary.shortest_to:
        raise Unreachable(f"target {target} is not reachable by an increasing path")
    return summary.shortest_to[target]


def longest_increasing_path_length(f: QpbFunction, start: Sequence[int] | None,
                                   target: Sequence[int], threshold: int | None = None) -> int:
    summary = reachable_from(f, start, threshold)
    target = tuple(target)
    if target not in summary.longest_to:
        raise Unreachable(f"target {target} is not reachable by an increasing path")
    return summary.longest_to[target]


def verify_doubling(p_values: Mapping[int, int]) -> bool:
    """``p[n+4] >= 2 p[n]`` for consecutive sizes and ``p[n] >= 2**(n/4)`` everywhere."""
    if not p_values:
        raise ValueError("no sizes given")
    sizes = sorted(p_values)
    for a, b in zip(sizes, sizes[1:]):
        if b - a != 4:
            raise ValueError(f"missing sizes between {a} and {b}")
    for n in sizes:
        # p >= 2**(n/4)  <=>  p**4 >= 2**n, exact in integers
        if p_values[n] <= 0 or p_values[n] ** 4 < 2**n:
            return False
    return all(p_values[b] >= 2 * p_values[a] for a, b in zip(sizes, sizes[1:]))


def exceeds_quarter_power(steps: int, n: int, strict: bool = False) -> bool:
    """Exact test of ``steps >= 2**(n/4)`` (``>`` when ``strict``)."""
    lhs, rhs = steps**4, 2**n
    return lhs > rhs if strict else lhs >= rhs
