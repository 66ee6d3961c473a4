"""Run every exhaustive check at oracle-feasible sizes and print a report.

Exit status is 1 if any check fails.
"""

import sys

from qpbhard.core import ones
from qpbhard.families import MMode, build_f, build_g
from qpbhard.oracle import (
    longest_increasing_path_length,
    reachable_from,
    verify_doubling,
)
from qpbhard.verify import (
    check_all_claims,
    check_bit_growth,
    check_greedy,
    check_table_signs,
)


def main():
    ok = True
    p = {}
    for n in (2, 6, 10, 14, 18):
        f = build_f(n, MMode.EXACT).function
        s = reachable_from(f)
        unique = s.reachable_sinks == [ones(n)]
        p[n] = s.shortest_to.get(ones(n))
        longest = longest_increasing_path_length(f, None, ones(n)) if unique else None
        print(f"F n={n:>2} reachable={s.reachable_count:>6} sinks={len(s.reachable_sinks)} "
              f"shortest={p[n]} longest={longest} {'PASS' if unique else 'FAIL'}")
        ok &= unique
    doubling = verify_doubling(p)
    print(f"doubling p[n+4] >= 2 p[n] and p[n] >= 2^(n/4): {'PASS' if doubling else 'FAIL'}")
    ok &= doubling

    for n, mode in ((6, MMode.EXACT), (10, MMode.EXACT), (14, MMode.EXACT), (14, MMode.BOUND), (18, MMode.BOUND)):
        inst = build_f(n, mode)
        for r in check_all_claims(inst) + check_table_signs(inst):
            print(f"[{mode.value}] {r.line()}")
            ok &= r.passed

    for n in (2, 6, 10, 14, 18, 22):
        for r in check_greedy(build_g(n, MMode.EXACT)):
            print(r.line())
            ok &= r.passed

    r = check_bit_growth(50, MMode.BOUND)
    print(r.line())
    ok &= r.passed
    print("ALL PASS" if ok else "SOME CHECKS FAILED")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
