"""Shared brute-force helpers and hypothesis strategies.

Nothing here touches the derivative caches or value tables of the package;
values come straight from the defining sum so tests have an independent
reference.
"""

import itertools

import pytest
from hypothesis import strategies as st

from qpbhard.core import QpbFunction


def brute_eval(f, x):
    total = 0
    for k in range(f.n):
        total += f.linear[k] * x[k]
    for i in range(1, f.n + 1):
        for j in range(i + 1, f.n + 1):
            total += f.quadratic.get((i, j), 0) * x[i - 1] * x[j - 1]
    return total


def all_vertices(n):
    return [tuple(v) for v in itertools.product((0, 1), repeat=n)]


def flipped(x, i):
    y = list(x)
    y[i - 1] ^= 1
    return tuple(y)


@st.composite
def qpb_functions(draw, min_n=1, max_n=8, coef=st.integers(-50, 50)):
    n = draw(st.integers(min_n, max_n))
    linear = tuple(draw(st.lists(coef, min_size=n, max_size=n)))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    quad = {}
    for p in pairs:
        if draw(st.booleans()):
            quad[p] = draw(coef)
    return QpbFunction(n, linear, quad)


@st.composite
def function_and_vertex(draw, **kw):
    f = draw(qpb_functions(**kw))
    x = tuple(draw(st.lists(st.integers(0, 1), min_size=f.n, max_size=f.n)))
    return f, x


@pytest.fixture
def f2():
    return QpbFunction(2, (1, 1))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
