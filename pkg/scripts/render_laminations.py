"""Write SVG snapshots L_{floor(nt)} of one sampled lamination process.

    python scripts/render_laminations.py --n 2000 --seed 3 --out figures/
"""
import argparse
import math
from fractions import Fraction
from pathlib import Path

from monofact.bijection import decreasing_factorisation_of_tree, increasing_factorisation_of_tree
from monofact.lamination import SvgOptions, discrete_lamination_process, render_svg
from monofact.tree import sample_uniform_plane_tree


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=3)
    ap.add_argument("--kind", choices=("decreasing", "increasing"), default="decreasing")
    ap.add_argument("--times", nargs="+", default=["1/4", "1/2", "3/4", "1"])
    ap.add_argument("--out", type=Path, default=Path("figures"))
    args = ap.parse_args()
    tree = sample_uniform_plane_tree(args.n, args.seed)
    fw = decreasing_factorisation_of_tree if args.kind == "decreasing" else increasing_factorisation_of_tree
    proc = discrete_lamination_process(fw(tree))
    args.out.mkdir(parents=True, exist_ok=True)
    for t in map(Fraction, args.times):
        k = math.floor(args.n * t)
        path = args.out / f"lamination_{args.kind}_n{args.n}_s{args.seed}_k{k}.svg"
        path.write_bytes(render_svg(proc.snapshot(k), SvgOptions(title=f"{args.kind} n={args.n} t={t}")))
        print(path)


if __name__ == "__main__":
    main()
