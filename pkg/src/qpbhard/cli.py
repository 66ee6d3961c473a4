"""Command-line interface: ``generate``, ``run``, ``verify``, ``bench``.

Exit codes: 0 success, 1 usage or input error, 2 failed verification,
3 exact mode requested where it is infeasible.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from pathlib import Path

from .core import ones, to_bitstring
from .families import ExactRangeInfeasible, Family, MMode, build, max_coefficient_bits
from .fileio import FormatError, read_instance, serialize_instance, serialize_trace
from .oracle import OracleTooLarge, exceeds_quarter_power, reachable_from
from .search import (
    ORDERS,
    TIE_BREAKS,
    PivotRule,
    RuleKind,
    Termination,
    run_search,
)
from .verify import (
    CheckTooLarge,
    check_all_claims,
    check_bit_growth,
    check_greedy,
    check_table_signs,
)

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_INFEASIBLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rule_from_args(args, kind: str) -> PivotRule:
    return PivotRule(RuleKind(kind), order=args.order, tie_break=args.tie_break, seed=args.seed)


def _mode(value: str | None) -> MMode | None:
    return None if value in (None, "auto") else MMode(value)


def cmd_generate(args, out) -> int:
    inst = build(args.family, args.n, _mode(args.m_mode))
    text = serialize_instance(inst)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}: family={inst.family.value} n={inst.n} m_mode={inst.m_mode.value}", file=out)
    else:
        out.write(text)
    return EXIT_OK


def cmd_run(args, out) -> int:
    try:
        parsed = read_instance(args.instance)
    except (OSError, FormatError) as e:
        raise UsageError(f"cannot read instance: {e}") from None
    rule = _rule_from_args(args, args.rule)
    trace = run_search(parsed.function, None, rule, args.step_limit)
    if args.trace:
        Path(args.trace).write_text(serialize_trace(trace, rule))
    print(
        f"steps={trace.n_steps} end={to_bitstring(trace.end)} ties={len(trace.tie_events)} "
        f"terminated={trace.terminated.value}",
        file=out,
    )
    return EXIT_OK


def _verify_lemma2(args, out) -> bool:
    inst = build(Family.F, args.n, _mode(args.m_mode))
    summary = reachable_from(inst.function)
    target = ones(inst.n)
    ok = summary.reachable_sinks == [target]
    label = "(all-ones)" if ok else "[" + ", ".join(map(to_bitstring, summary.reachable_sinks)) + "]"
    print(f"reachable sinks: {len(summary.reachable_sinks)} {label} {'PASS' if ok else 'FAIL'}", file=out)
    if ok:
        p = summary.shortest_to[target]
        bound_ok = exceeds_quarter_power(p, inst.n)
        print(f"p_{inst.n}={p} reachable={summary.reachable_count} "
              f"p>=2^(n/4) {'PASS' if bound_ok else 'FAIL'}", file=out)
        ok = ok and bound_ok
    return ok


def _print_reports(reports, out) -> bool:
    for r in reports:
        print(r.line(), file=out)
    return all(r.passed for r in reports)


def cmd_verify(args, out) -> int:
    scope = args.scope
    if scope == "bits":
        if args.n_max is None:
            raise UsageError("verify bits needs --n-max")
        mode = _mode(args.m_mode) or MMode.BOUND
        ok = _print_reports([check_bit_growth(args.n_max, mode)], out)
    else:
        if args.n is None:
            raise UsageError(f"verify {scope} needs --n")
        if scope == "lemma2":
            ok = _verify_lemma2(args, out)
        elif scope == "claims":
            ok = _print_reports(check_all_claims(build(Family.F, args.n, _mode(args.m_mode))), out)
        elif scope == "table":
            ok = _print_reports(check_table_signs(build(Family.F, args.n, _mode(args.m_mode))), out)
        else:
            inst = build(Family.G, args.n, _mode(args.m_mode) or MMode.EXACT)
            ties, end = check_greedy(inst)
            n_ties = ties.detail.split(";")[0]
            ok = ties.passed and end.passed
            verdict = "matches" if end.passed else "differs"
            print(f"{n_ties} endpoint {verdict} {end.detail} {'PASS' if ok else 'FAIL'}", file=out)
    return EXIT_OK if ok else EXIT_FAILED


def bench_rows(family, n_min: int, n_max: int, rules, m_mode=None, step_limit=None):
    """Yield CSV rows ``(n, rule, steps, bits, wall_ms)``; raises on a short or unfinished run."""
    for n in range(n_min, n_max + 1, 4):
        inst = build(family, n, m_mode)
        bits = max_coefficient_bits(inst)
        for rule in rules:
            t0 = time.perf_counter()
            trace = run_search(inst.function, None, rule, step_limit)
            ms = (time.perf_counter() - t0) * 1000
            if trace.terminated is not Termination.LOCAL_MAX:
                raise AssertionError(f"n={n} rule={rule.name}: step limit reached")
            if not exceeds_quarter_power(trace.n_steps, n):
                raise AssertionError(f"n={n} rule={rule.name}: {trace.n_steps} steps < 2^(n/4)")
            yield n, rule.name, trace.n_steps, bits, f"{ms:.3f}"


def cmd_bench(args, out) -> int:
    if args.n_min % 4 != 2 or args.n_max % 4 != 2 or args.n_min > args.n_max:
        raise UsageError("--n-min/--n-max must be 2 mod 4 with n-min <= n-max")
    rules = [_rule_from_args(args, k.strip()) for k in args.rule.split(",")]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "rule", "steps", "bits", "wall_ms"])
    try:
        for row in bench_rows(args.family, args.n_min, args.n_max, rules, _mode(args.m_mode), args.step_limit):
            writer.writerow(row)
    except AssertionError as e:
        print(f"bench aborted: {e}", file=sys.stderr)
        return EXIT_FAILED
    if args.out:
        Path(args.out).write_text(buf.getvalue())
        print(f"wrote {args.out}", file=out)
    else:
        out.write(buf.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qpbhard", description="Hard instances for increasing local search on QPB functions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    modes = ["exact", "bound", "auto"]
    rules = [k.value for k in RuleKind]

    g = sub.add_parser("generate", help="write an instance file")
    g.add_argument("--family", type=str.upper, choices=["F", "G"], required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m-mode", choices=modes, default="auto")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    def rule_flags(sp, multi=False):
        sp.add_argument("--rule", default="first",
                        help="comma-separated list of " + "/".join(rules) if multi else "/".join(rules))
        sp.add_argument("--order", choices=ORDERS, default="ascending")
        sp.add_argument("--tie-break", choices=TIE_BREAKS, default="lowest_index")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--step-limit", type=int)

    r = sub.add_parser("run", help="run local search from the origin")
    r.add_argument("instance")
    rule_flags(r)
    r.add_argument("--trace")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="run exhaustive checks")
    v.add_argument("scope", choices=["lemma2", "claims", "table", "greedy", "bits"])
    v.add_argument("--n", type=int)
    v.add_argument("--n-max", type=int)
    v.add_argument("--m-mode", choices=modes, default="auto")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="step counts per size as CSV")
    b.add_argument("--family", type=str.upper, choices=["F", "G"], required=True)
    b.add_argument("--n-min", type=int, default=2)
    b.add_argument("--n-max", type=int, required=True)
    b.add_argument("--m-mode", choices=modes, default="auto")
    rule_flags(b, multi=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ExactRangeInfeasible as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (UsageError, ValueError, OracleTooLarge, CheckTooLarge) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
