"""Median alignment bound D_n over seeds along an n-grid.

    python scripts/alignment_trend.py --n 200 800 3200 --seeds 20
"""
import argparse
import json
import time

from monofact.cli import distance_table


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, nargs="+", default=[200, 800, 3200])
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--tol", type=float, default=1e-4)
    ap.add_argument("--json", action="store_true", help="print the full table as JSON")
    args = ap.parse_args()
    t0 = time.perf_counter()
    table = distance_table(args.n, args.seeds, args.seed, args.tol)
    if args.json:
        print(json.dumps(table, sort_keys=True, indent=2))
        return
    print(f"{'n':>7} {'q10':>9} {'median':>9} {'q90':>9}  n^(1/2)*median")
    for r in table["rows"]:
        print(f"{r['n']:>7} {r['q10']:>9.4f} {r['median']:>9.4f} {r['q90']:>9.4f}  {r['median'] * r['n'] ** 0.5:>8.3f}")
    print(f"strictly decreasing: {table['median_strictly_decreasing']}   ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
