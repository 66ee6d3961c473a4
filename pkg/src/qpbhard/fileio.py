"""Plain-text instance and trace files.

Instance file::

    qpbf <n>
    # family F
    # m_mode exact
    # m_sequence 3 ...
    <i> <c_i>            one line per variable, i = 1..n
    <i> <j> <c_ij>       one line per nonzero pair, i < j, ascending

Trace file::

    trace <n> <rule> <seed>
    start <bitstring>
    <step#> <flipped_index> <gain> <value_after>
    end <bitstring> <LocalMax|StepLimit>

Integers are decimal with no size limit and indices are 1-based, so files
carry coefficients far beyond 64 bits without loss.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path

from .core import QpbFunction, from_bitstring, to_bitstring
from .families import Family, FamilyInstance, MMode
from .search import PivotRule, Step, Termination, Trace, replay


class FormatError(ValueError):
    pass


@dataclass
class ParsedInstance:
    function: QpbFunction
    metadata: dict[str, str] = field(default_factory=dict)

    def as_family_instance(self) -> FamilyInstance | None:
        md = self.metadata
        if not {"family", "m_mode", "m_sequence"} <= md.keys():
            return None
        ms = tuple(int(t) for t in md["m_sequence"].split())
        return FamilyInstance(self.function, Family(md["family"]), self.function.n, MMode(md["m_mode"]), ms)


def serialize_instance(obj: QpbFunction | FamilyInstance) -> str:
    f = obj.function if isinstance(obj, FamilyInstance) else obj
    out = [f"qpbf {f.n}"]
    if isinstance(obj, FamilyInstance):
        out.append(f"# family {obj.family.value}")
        out.append(f"# m_mode {obj.m_mode.value}")
        out.append("# m_sequence " + " ".join(str(m) for m in obj.m_sequence))
    out += [f"{i} {c}" for i, c in enumerate(f.linear, start=1)]
    out += [f"{i} {j} {c}" for (i, j), c in sorted(f.quadratic.items())]
    return "\n".join(out) + "\n"


def parse_instance(text: str) -> ParsedInstance:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty instance file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "qpbf":
        raise FormatError(f"bad header: {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise FormatError(f"bad variable count: {head[1]!r}") from None
    if n <= 0:
        raise FormatError("variable count must be positive")
    linear = [0] * n
    seen_linear: set[int] = set()
    quad: dict[tuple[int, int], int] = {}
    metadata: dict[str, str] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, val = line[1:].strip().partition(" ")
            if key:
                metadata[key] = val.strip()
            continue
        try:
            nums = [int(t) for t in line.split()]
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer token in {line!r}") from None
        if len(nums) == 2:
            i, c = nums
            if not 1 <= i <= n:
                raise FormatError(f"line {lineno}: index {i} out of range")
            if i in seen_linear:
                raise FormatError(f"line {lineno}: duplicate linear term {i}")
            seen_linear.add(i)
            linear[i - 1] = c
        elif len(nums) == 3:
            i, j, c = nums
            if not 1 <= i < j <= n:
                raise FormatError(f"line {lineno}: pair ({i}, {j}) must satisfy 1 <= i < j <= {n}")
            if (i, j) in quad:
                raise FormatError(f"line {lineno}: duplicate pair ({i}, {j})")
            quad[(i, j)] = c
        else:
            raise FormatError(f"line {lineno}: expected 2 or 3 fields, got {len(nums)}")
    return ParsedInstance(QpbFunction(n, tuple(linear), quad), metadata)


def write_instance(obj: QpbFunction | FamilyInstance, path: str | Path) -> None:
    Path(path).write_text(serialize_instance(obj))


def read_instance(path: str | Path) -> ParsedInstance:
    return parse_instance(Path(path).read_text())


def serialize_trace(trace: Trace, rule: PivotRule) -> str:
    buf = io.StringIO()
    buf.write(f"trace {len(trace.start)} {rule.name} {rule.seed}\n")
    buf.write(f"start {to_bitstring(trace.start)}\n")
    for k, s in enumerate(trace.steps, start=1):
        buf.write(f"{k} {s.index} {s.gain} {s.value_after}\n")
    buf.write(f"end {to_bitstring(trace.end)} {trace.terminated.value}\n")
    return buf.getvalue()


def parse_trace(text: str) -> tuple[Trace, PivotRule]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 3:
        raise FormatError("trace file too short")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "trace":
        raise FormatError(f"bad trace header: {lines[0]!r}")
    n = int(head[1])
    try:
        rule = PivotRule.parse(head[2], int(head[3]))
    except ValueError as e:
        raise FormatError(f"bad rule in header: {e}") from None
    start_line = lines[1].split()
    if len(start_line) != 2 or start_line[0] != "start":
        raise FormatError(f"bad start line: {lines[1]!r}")
    start = from_bitstring(start_line[1])
    foot = lines[-1].split()
    if len(foot) != 3 or foot[0] != "end":
        raise FormatError(f"bad end line: {lines[-1]!r}")
    end = from_bitstring(foot[1])
    if len(start) != n or len(end) != n:
        raise FormatError("vertex length does not match header")
    steps = []
    for k, line in enumerate(lines[2:-1], start=1):
        parts = line.split()
        if len(parts) != 4:
            raise FormatError(f"bad step line: {line!r}")
        num, idx, gain, value = (int(p) for p in parts)
        if num != k:
            raise FormatError(f"step numbers out of order at {line!r}")
        steps.append(Step(idx, gain, value))
    try:
        terminated = Termination(foot[2])
    except ValueError:
        raise FormatError(f"unknown termination {foot[2]!r}") from None
    return Trace(start=start, steps=steps, end=end, terminated=terminated), rule


def validate_trace(f: QpbFunction, text: str) -> bool:
    """Replay a trace file against an instance; True iff every recorded number checks out."""
    try:
        trace, _ = parse_trace(text)
    except (FormatError, ValueError):
        return False
    if len(trace.start) != f.n:
        return False
    try:
        return replay(f, trace)
    except (IndexError, ValueError):
        return False
