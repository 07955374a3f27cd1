"""Exact law of the number of distinct a-values for small n, then the
standardised statistic at large n.

    python scripts/distinct_a.py --exact-max 10 --n 10000 --trials 2000
"""
import argparse

from monofact.stats import distinct_a_clt, distinct_a_distribution_exact


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--exact-max", type=int, default=8)
    ap.add_argument("--n", type=int, default=10_000)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    for n in range(2, args.exact_max + 1):
        r = distinct_a_distribution_exact(n)
        probs = "  ".join(str(p) for p in r.probabilities)
        print(f"n={n:<3} {probs}    printed-formula mass {r.statistics['printed_formula_mass']}")
    print()
    print(distinct_a_clt(args.n, args.trials, args.seed).to_text())


if __name__ == "__main__":
    main()
