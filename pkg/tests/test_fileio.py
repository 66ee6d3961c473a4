import pytest
from conftest import qpb_functions
from hypothesis import given
from hypothesis import strategies as st

from qpbhard.core import QpbFunction
from qpbhard.families import MMode, build_f, build_g
from qpbhard.fileio import (
    FormatError,
    parse_instance,
    parse_trace,
    read_instance,
    serialize_instance,
    serialize_trace,
    validate_trace,
    write_instance,
)
from qpbhard.search import all_rules, best_improvement, first_improvement, run_search


class TestInstanceFile:
    def test_f2_lines(self):
        text = serialize_instance(build_f(2))
        lines = text.splitlines()
        assert lines[0] == "qpbf 2"
        assert "1 1" in lines and "2 1" in lines
        assert text.endswith("\n")

    def test_f6_last_pair(self):
        assert serialize_instance(build_f(6, MMode.EXACT)).splitlines()[-1] == "5 6 72"

    def test_g6_entry(self):
        assert "4 6 -96" in serialize_instance(build_g(6)).splitlines()

    def test_metadata_roundtrip(self):
        inst = build_f(14, MMode.BOUND)
        parsed = parse_instance(serialize_instance(inst))
        assert parsed.as_family_instance() == inst

    def test_plain_function_has_no_metadata(self):
        parsed = parse_instance(serialize_instance(QpbFunction(2, (3, -4), {(1, 2): 5})))
        assert parsed.metadata == {} and parsed.as_family_instance() is None

    @given(qpb_functions(max_n=10, coef=st.integers(-(2**200), 2**200)))
    def test_roundtrip(self, f):
        text = serialize_instance(f)
        assert parse_instance(text).function == f
        assert serialize_instance(parse_instance(text).function) == text

    def test_big_family_roundtrip(self, tmp_path):
        inst = build_f(50, MMode.BOUND)
        path = tmp_path / "f50.qpbf"
        write_instance(inst, path)
        assert read_instance(path).function == inst.function
        assert max(abs(c) for c in inst.function.coefficients()) > 2**64

    def test_byte_deterministic(self):
        assert serialize_instance(build_g(10)) == serialize_instance(build_g(10))

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "qubo 2\n",
            "qpbf x\n",
            "qpbf 2\n3 1\n",
            "qpbf 2\n2 1 5\n",
            "qpbf 2\n1 1\n1 2\n",
            "qpbf 2\n1 2 3 4\n",
            "qpbf 2\n1 abc\n",
            "qpbf 3\n1 2 1\n1 2 1\n",
        ],
    )
    def test_rejects_malformed(self, text):
        with pytest.raises(FormatError):
            parse_instance(text)


class TestTraceFile:
    def test_format(self):
        f = build_f(2).function
        text = serialize_trace(run_search(f, None, first_improvement()), first_improvement())
        assert text == "trace 2 first-ascending 0\nstart 00\n1 1 1 1\n2 2 1 2\nend 11 LocalMax\n"

    @pytest.mark.parametrize("rule", all_rules(seeds=(5,)), ids=lambda r: r.name)
    def test_roundtrip_and_validate(self, rule):
        f = build_f(10).function
        t = run_search(f, None, rule)
        text = serialize_trace(t, rule)
        back, rule2 = parse_trace(text)
        assert rule2 == rule
        assert back.steps == t.steps and back.end == t.end and back.terminated == t.terminated
        assert validate_trace(f, text)

    def test_tampered_value_rejected(self):
        f = build_g(6).function
        rule = best_improvement()
        lines = serialize_trace(run_search(f, None, rule), rule).splitlines()
        parts = lines[3].split()
        parts[3] = str(int(parts[3]) + 1)
        lines[3] = " ".join(parts)
        assert not validate_trace(f, "\n".join(lines) + "\n")

    def test_wrong_instance_rejected(self):
        rule = first_improvement()
        text = serialize_trace(run_search(build_f(6).function, None, rule), rule)
        assert not validate_trace(build_g(6).function, text)
        assert not validate_trace(build_f(10).function, text)

    def test_malformed(self):
        assert not validate_trace(build_f(2).function, "garbage\n")
        with pytest.raises(FormatError):
            parse_trace("trace 2 first-ascending 0\nstart 00\nend 11 Maybe\n")
