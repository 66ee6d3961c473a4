"""Step counts of origin-started local search on both families.

Writes one CSV per family (n, rule, steps, bits, wall_ms) and prints the
per-size doubling ratio for the first rule.

    python scripts/scaling_experiment.py --out-dir results
"""

import argparse
import csv
from pathlib import Path

from qpbhard.cli import bench_rows
from qpbhard.families import Family, MMode
from qpbhard.search import all_rules, best_improvement, first_improvement

HEADER = ["n", "rule", "steps", "bits", "wall_ms"]


def run(family, n_max, rules, m_mode, path):
    rows = list(bench_rows(family, 2, n_max, rules, m_mode))
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(HEADER)
        w.writerows(rows)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--f-max", type=int, default=50)
    ap.add_argument("--g-max", type=int, default=22)
    ap.add_argument("--seeds", type=int, default=3, help="random-rule seeds for the all-rules sweep")
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    f_rows = run(Family.F, args.f_max, [first_improvement()], MMode.BOUND, out / "f_first_bound.csv")
    print(f"{'n':>4} {'steps':>8} {'bits':>5} {'ratio':>6}")
    prev = None
    for n, _, steps, bits, _ in f_rows:
        ratio = f"{steps / prev:.3f}" if prev else ""
        print(f"{n:>4} {steps:>8} {bits:>5} {ratio:>6}")
        prev = steps

    rules = all_rules(seeds=range(args.seeds))
    rows = run(Family.F, min(args.f_max, 18), rules, MMode.BOUND, out / "f_all_rules.csv")
    per_n = {}
    for n, _, steps, _, _ in rows:
        per_n.setdefault(n, set()).add(steps)
    print("distinct step counts across rules per n:", {n: sorted(s) for n, s in per_n.items()})

    g_rows = run(Family.G, args.g_max, [best_improvement()], MMode.EXACT, out / "g_greedy_exact.csv")
    print("greedy on G:", [(n, steps) for n, _, steps, _, _ in g_rows])
    print(f"wrote CSVs to {out}/")


if __name__ == "__main__":
    main()
