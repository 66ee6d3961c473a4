"""Exact quadratic pseudo-boolean functions and single-flip search state.

A function on ``{0,1}^n`` is stored as

    f(x) = sum_i c_i x_i + sum_{i<j} c_ij x_i x_j

with Python ``int`` coefficients, so nothing is ever rounded.  Variable
indices in every public function here are 1-based; a vertex is a tuple of
0/1 ints where position ``k - 1`` holds variable ``k``.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

Vertex = tuple[int, ...]


@dataclass(frozen=True)
class QpbFunction:
    """Quadratic pseudo-boolean function with integer coefficients.

    ``linear[k - 1]`` is the coefficient of ``x_k``.  ``quadratic`` maps
    1-based pairs ``(i, j)`` with ``i < j`` to nonzero coefficients; a
    missing pair means zero.
    """

    n: int
    linear: tuple[int, ...]
    quadratic: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n <= 0:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        linear = tuple(self.linear)
        if len(linear) != self.n:
            raise ValueError(f"expected {self.n} linear coefficients, got {len(linear)}")
        for c in linear:
            if not isinstance(c, int):
                raise TypeError(f"coefficients must be int, got {type(c).__name__}")
        quad = {}
        for (i, j), c in sorted(self.quadratic.items()):
            if not 1 <= i < j <= self.n:
                raise ValueError(f"quadratic key ({i}, {j}) must satisfy 1 <= i < j <= {self.n}")
            if not isinstance(c, int):
                raise TypeError(f"coefficients must be int, got {type(c).__name__}")
            if c != 0:
                quad[(i, j)] = c
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "quadratic", quad)

    @classmethod
    def from_terms(
        cls,
        n: int,
        linear: Iterable[int] | Mapping[int, int] = (),
        quadratic: Mapping[tuple[int, int], int] | None = None,
    ) -> QpbFunction:
        """Build from loose terms.

        ``linear`` is either a full sequence or a sparse ``{index: c}`` map
        (1-based).  Quadratic keys may come in either order and repeated
        pairs are summed.
        """
        if isinstance(linear, Mapping):
            dense = [0] * n
            for k, c in linear.items():
                if not 1 <= k <= n:
                    raise ValueError(f"linear index {k} out of range 1..{n}")
                dense[k - 1] += c
        else:
            dense = list(linear) or [0] * n
        quad: dict[tuple[int, int], int] = {}
        for (i, j), c in (quadratic or {}).items():
            if i == j:
                # x_i^2 = x_i on the hypercube
                dense[i - 1] += c
                continue
            key = (min(i, j), max(i, j))
            quad[key] = quad.get(key, 0) + c
        return cls(n, tuple(dense), quad)

    def coef(self, i: int, j: int) -> int:
        """Symmetric read of ``c_ij``; ``coef(i, i)`` is the linear term."""
        if i == j:
            return self.linear[i - 1]
        return self.quadratic.get((min(i, j), max(i, j)), 0)

    def coefficients(self) -> list[int]:
        return list(self.linear) + list(self.quadratic.values())

    @cached_property
    def neighbors(self) -> list[list[tuple[int, int]]]:
        """0-based adjacency: ``neighbors[i]`` lists ``(j, c_ij)`` for every j != i."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for (i, j), c in self.quadratic.items():
            adj[i - 1].append((j - 1, c))
            adj[j - 1].append((i - 1, c))
        return adj

    def __hash__(self) -> int:
        return hash((self.n, self.linear, tuple(self.quadratic.items())))


def origin(n: int) -> Vertex:
    return (0,) * n


def ones(n: int) -> Vertex:
    return (1,) * n


def to_bitstring(x: Sequence[int]) -> str:
    return "".join("1" if b else "0" for b in x)


def from_bitstring(s: str) -> Vertex:
    s = s.strip()
    if not s or set(s) - {"0", "1"}:
        raise ValueError(f"not a bit string: {s!r}")
    return tuple(int(ch) for ch in s)


def flip(x: Sequence[int], i: int) -> Vertex:
    """Return ``x`` with variable ``i`` (1-based) toggled."""
    y = list(x)
    y[i - 1] ^= 1
    return tuple(y)


def _check_vertex(f: QpbFunction, x: Sequence[int]) -> None:
    if len(x) != f.n:
        raise ValueError(f"vertex has length {len(x)}, function has n={f.n}")


def _check_index(f: QpbFunction, i: int) -> None:
    if not 1 <= i <= f.n:
        raise IndexError(f"variable index {i} out of range 1..{f.n}")


def eval_at(f: QpbFunction, x: Sequence[int]) -> int:
    """Exact value of ``f`` at vertex ``x``."""
    _check_vertex(f, x)
    total = sum(c for c, b in zip(f.linear, x) if b)
    for (i, j), c in f.quadratic.items():
        if x[i - 1] and x[j - 1]:
            total += c
    return total


def discrete_derivative(f: QpbFunction, x: Sequence[int], i: int) -> int:
    """``f(x | x_i = 1) - f(x | x_i = 0)``; does not depend on ``x_i``."""
    _check_vertex(f, x)
    _check_index(f, i)
    d = f.linear[i - 1]
    for j, c in f.neighbors[i - 1]:
        if x[j]:
            d += c
    return d


def flip_gain(f: QpbFunction, x: Sequence[int], i: int) -> int:
    """Change in ``f`` when variable ``i`` is flipped; positive means improving."""
    d = discrete_derivative(f, x, i)
    return -d if x[i - 1] else d


def improving_moves(f: QpbFunction, x: Sequence[int]) -> list[tuple[int, int]]:
    """All ``(index, gain)`` with gain > 0, ascending by index."""
    _check_vertex(f, x)
    moves = []
    for i in range(1, f.n + 1):
        g = flip_gain(f, x, i)
        if g > 0:
            moves.append((i, g))
    return moves


def is_local_max(f: QpbFunction, x: Sequence[int]) -> bool:
    return not improving_moves(f, x)


@dataclass
class SearchState:
    """Mutable search position with cached derivatives.

    ``derivatives[k]`` holds the discrete derivative of variable ``k + 1``.
    """

    vertex: list[int]
    value: int
    derivatives: list[int]

    def gain(self, i: int) -> int:
        d = self.derivatives[i - 1]
        return -d if self.vertex[i - 1] else d

    def gains(self) -> list[int]:
        return [-d if b else d for b, d in zip(self.vertex, self.derivatives)]

    def copy(self) -> SearchState:
        return SearchState(list(self.vertex), self.value, list(self.derivatives))

    @property
    def point(self) -> Vertex:
        return tuple(self.vertex)


def make_state(f: QpbFunction, x: Sequence[int]) -> SearchState:
    _check_vertex(f, x)
    x = [1 if b else 0 for b in x]
    derivs = [discrete_derivative(f, x, i) for i in range(1, f.n + 1)]
    return SearchState(x, eval_at(f, x), derivs)


def apply_flip(state: SearchState, f: QpbFunction, i: int) -> SearchState:
    """Flip variable ``i`` in place, updating value and derivatives in O(deg i)."""
    _check_index(f, i)
    k = i - 1
    x = state.vertex
    d = state.derivatives
    if x[k]:
        state.value -= d[k]
        x[k] = 0
        for j, c in f.neighbors[k]:
            d[j] -= c
    else:
        state.value += d[k]
        x[k] = 1
        for j, c in f.neighbors[k]:
            d[j] += c
    return state


def restrict(f: QpbFunction, m: int) -> QpbFunction:
    """Drop variables ``m + 1 .. n`` and every term touching them."""
    if not 1 <= m <= f.n:
        raise ValueError(f"cannot restrict n={f.n} to {m} variables")
    quad = {(i, j): c for (i, j), c in f.quadratic.items() if j <= m}
    return QpbFunction(m, f.linear[:m], quad)


def scale(f: QpbFunction, k: int) -> QpbFunction:
    return QpbFunction(f.n, tuple(k * c for c in f.linear), {p: k * c for p, c in f.quadratic.items()})


def coefficient_bound(f: QpbFunction) -> int:
    """Sum of absolute coefficients; an upper bound on ``max f - min f``."""
    return sum(abs(c) for c in f.linear) + sum(abs(c) for c in f.quadratic.values())


_INT64_SAFE = 2**62


def _doubling_table(f: QpbFunction, first: int, count: int, dtype) -> np.ndarray:
    """Values of the part of ``f`` living on variables ``first+1 .. first+count``.

    Entry ``m`` corresponds to the assignment whose bit ``b`` (LSB first)
    sets variable ``first + b + 1``.
    """
    vals = np.zeros(1, dtype=dtype)
    for b in range(count):
        k = first + b
        size = vals.shape[0]
        inc = np.full(size, f.linear[k], dtype=dtype)
        for j, c in f.neighbors[k]:
            jb = j - first
            if 0 <= jb < b:
                bit = ((np.arange(size) >> jb) & 1).astype(bool)
                inc[bit] += c
        vals = np.concatenate([vals, vals + inc])
    return vals


def _linear_table(weights: Sequence[int], dtype) -> np.ndarray:
    vals = np.zeros(1, dtype=dtype)
    for w in weights:
        vals = np.concatenate([vals, vals + w])
    return vals


def value_table(f: QpbFunction, *, block_bits: int = 16):
    """Yield ``(offset, values)`` blocks covering all ``2**n`` vertices.

    ``values[m]`` is ``f`` at the vertex encoded by integer ``offset + m``,
    where bit ``k - 1`` of the code is variable ``k``.  Uses int64 when the
    coefficient bound proves no overflow, exact Python ints otherwise.
    """
    dtype = np.int64 if coefficient_bound(f) < _INT64_SAFE else object
    low = min(f.n, block_bits)
    base = _doubling_table(f, 0, low, dtype)
    high_n = f.n - low
    if high_n == 0:
        yield 0, base
        return
    high_vals = _doubling_table(f, low, high_n, dtype)
    for h in range(2**high_n):
        weights = [0] * low
        for j in range(high_n):
            if (h >> j) & 1:
                for i, c in f.neighbors[low + j]:
                    if i < low:
                        weights[i] += c
        block = base + _linear_table(weights, dtype) + high_vals[h]
        yield h << low, block


def full_value_table(f: QpbFunction) -> np.ndarray:
    """All ``2**n`` values in one array, indexed by vertex code."""
    return np.concatenate([blk for _, blk in value_table(f)])


def vertex_code(x: Sequence[int]) -> int:
    return sum(1 << k for k, b in enumerate(x) if b)


def code_vertex(code: int, n: int) -> Vertex:
    return tuple((code >> k) & 1 for k in range(n))
