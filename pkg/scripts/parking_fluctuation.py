"""Quantiles of sqrt(n/2) sup|F_pi(x) - x| for the parking function of a
uniform decreasing factorisation, at several n.

    python scripts/parking_fluctuation.py --n 1000 10000 --trials 500
"""
import argparse

from monofact.stats import parking_cdf_fluctuation


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, nargs="+", default=[1000, 10_000])
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=11)
    args = ap.parse_args()
    print(f"{'n':>7} {'q10':>7} {'q25':>7} {'median':>7} {'q75':>7} {'q90':>7}")
    for j, n in enumerate(args.n):
        s = parking_cdf_fluctuation(n, args.trials, args.seed + j).statistics
        print(f"{n:>7} {s['q10']:>7.3f} {s['q25']:>7.3f} {s['median']:>7.3f} {s['q75']:>7.3f} {s['q90']:>7.3f}")


if __name__ == "__main__":
    main()
