"""
Command-line entry point ``monofact``.

Exit codes: 0 success, 1 invariant failure, 2 usage error, 3 I/O error or
malformed input. Every run prints its resolved configuration to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import bijection as bij
from .lamination import (SvgOptions, WalkExcursion, alignment_bound, discrete_lamination_process,
                         good_cord_for_index, is_good_cord, rank_data,
                         render_svg, DEFAULT_TOL)
from .perm import (BOTH, DECREASING, INCREASING, Factorisation, is_231_avoiding,
                   is_cycle_factorisation, is_increasing_parking_function, monotone_class,
                   to_231_word, to_parking_word)
from .serialize import SCHEMA, MalformedInput, dump_obj, from_obj, to_obj
from .stats import (distinct_a_clt, distinct_a_distribution_exact, increasing_partition_check,
                    parking_cdf_fluctuation, pmap, profile_identity_check, sampler_frequency_test)
from .tree import MAX_TREE_ENUMERATION_N, PlaneTree, iter_plane_trees, make_rng, sample_uniform_plane_tree

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
KINDS = (DECREASING, INCREASING)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    n: list[int] = field(default_factory=list)
    kind: str = DECREASING
    seed: int = 0
    trials: int = 1
    t: str = "1"
    tol: float = DEFAULT_TOL
    out: str | None = None
    format: str = "json"
    input: str | None = None
    extra: dict = field(default_factory=dict)

    def validate(self):
        if self.kind not in KINDS:
            raise UsageError(f"--kind must be one of {KINDS}")
        if any(k < 1 for k in self.n):
            raise UsageError("--n must be >= 1")
        if self.seed < 0:
            raise UsageError("--seed must be non-negative")
        if self.trials < 1:
            raise UsageError("--trials must be >= 1")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        try:
            t = Fraction(self.t)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--t must be a rational number, got {self.t!r}") from None
        if not 0 <= t <= 1:
            raise UsageError("--t must lie in [0, 1]")

    def as_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v not in (None, {}, [])}


# -- helpers -----------------------------------------------------------------------

def _factorisation_of_tree(t: PlaneTree, kind: str) -> Factorisation:
    if kind == DECREASING:
        return bij.decreasing_factorisation_of_tree(t)
    return bij.increasing_factorisation_of_tree(t)


def _tree_of_factorisation(f: Factorisation, kind: str) -> PlaneTree:
    if kind == DECREASING:
        return bij.tree_of_decreasing_factorisation(f)
    return bij.tree_of_increasing_factorisation(f)


def _sample(n: int, kind: str, seed: int) -> tuple[PlaneTree, Factorisation]:
    t = sample_uniform_plane_tree(n, make_rng(seed))
    return t, _factorisation_of_tree(t, kind)


def _read_input(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as e:
        raise OSError(f"cannot read {path}: {e.strerror}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"invalid JSON in {path}: {e}") from e


class _Output:
    def __init__(self, path: str | None, binary: bool = False):
        self.path, self.binary = path, binary

    def __enter__(self):
        if self.path is None:
            self.fh = sys.stdout.buffer if self.binary else sys.stdout
            self.close = False
        else:
            self.fh = open(self.path, "wb" if self.binary else "w", encoding=None if self.binary else "utf-8",
                           newline=None if self.binary else "\n")
            self.close = True
        return self.fh

    def __exit__(self, *exc):
        if self.close:
            self.fh.close()
        else:
            self.fh.flush()
        return False


def _single_n(cfg: RunConfig) -> int:
    if len(cfg.n) != 1:
        raise UsageError("this subcommand takes a single --n")
    return cfg.n[0]


# -- subcommands ---------------------------------------------------------------------

def cmd_sample(cfg: RunConfig) -> int:
    n = _single_n(cfg)
    t, f = _sample(n, cfg.kind, cfg.seed)
    extra = {"kind": cfg.kind, "seed": cfg.seed}
    if cfg.extra.get("with_tree"):
        extra["tree"] = to_obj(t)
    with _Output(cfg.out) as fh:
        if cfg.format == "text":
            fh.write(" ".join(f"({a} {b})" for a, b in f.pairs()) + "\n")
        else:
            fh.write(dump_obj(to_obj(f, **extra)))
    return EXIT_OK


def cmd_enumerate(cfg: RunConfig) -> int:
    n = _single_n(cfg)
    if n > MAX_TREE_ENUMERATION_N:
        raise UsageError(f"enumeration supports n <= {MAX_TREE_ENUMERATION_N}")
    with _Output(cfg.out) as fh:
        # streamed: one document per line, in lexicographic order of the trees
        for t in iter_plane_trees(n):
            f = _factorisation_of_tree(t, cfg.kind)
            if cfg.format == "text":
                fh.write(" ".join(f"({a} {b})" for a, b in f.pairs()) + "\n")
            else:
                fh.write(dump_obj(to_obj(f, kind=cfg.kind)))
    return EXIT_OK


def verify_factorisation(f: Factorisation, declared_kind: str | None = None,
                         tree: PlaneTree | None = None) -> list[tuple[str, bool]]:
    """Named invariant checks for a factorisation; later checks only run when
    the earlier ones they depend on pass."""
    checks = []
    n = f.n
    minimal = n == 1 or is_cycle_factorisation(f)
    checks.append(("minimal_factorisation", minimal))
    if not minimal:
        return checks
    cls = monotone_class(f) if n > 1 else BOTH
    if declared_kind is not None:
        checks.append((f"declared_kind_{declared_kind}", cls in (declared_kind, BOTH)))
    if n > 1:
        lam_ok = True
        try:
            discrete_lamination_process(f)
        except ValueError:
            lam_ok = False
        checks.append(("non_crossing_chords", lam_ok))
        # vertex labels are recoverable from edge labels alone
        checks.append(("next_roundtrip", bij.factorisation_from_edge_labels(bij.t1_forward(f)) == f))
    if cls in (DECREASING, BOTH) and n > 1:
        t = bij.tree_of_decreasing_factorisation(f)
        checks.append(("decreasing_tree_roundtrip", bij.decreasing_factorisation_of_tree(t) == f))
        checks.append(("b_values_are_2_to_n", sorted(f.b) == list(range(2, n + 1))))
        checks.append(("increasing_parking_function", is_increasing_parking_function(to_parking_word(f))))
        checks.append(("b_word_231_avoiding", is_231_avoiding(to_231_word(f))))
        checks.append(("profile_sandwich_identity", profile_identity_check(f)))
        w = WalkExcursion.of_tree(t)
        rd = rank_data(f)
        checks.append(("good_cords_of_ranked_indices", all(
            is_good_cord(w, good_cord_for_index(f, i)) for i in range(1, n) if rd.r[i - 1] >= 2)))
        if tree is not None and declared_kind in (DECREASING, None):
            checks.append(("embedded_tree_matches", tree == t))
    if cls in (INCREASING, BOTH) and n > 1:
        t = bij.tree_of_increasing_factorisation(f)
        checks.append(("increasing_tree_roundtrip", bij.increasing_factorisation_of_tree(t) == f))
        checks.append(("a_b_partition", increasing_partition_check(f)))
        if tree is not None and declared_kind == INCREASING:
            checks.append(("embedded_tree_matches", tree == t))
    return checks


def _verify_doc(d: dict) -> tuple[str, list[tuple[str, bool]]]:
    obj = from_obj(d)
    if isinstance(obj, Factorisation):
        kind = d.get("kind")
        if kind is not None and kind not in KINDS:
            raise MalformedInput(f"unknown kind {kind!r}")
        tree = from_obj(d["tree"]) if "tree" in d else None
        if tree is not None and not isinstance(tree, PlaneTree):
            raise MalformedInput("embedded tree must be a plane_tree document")
        return "factorisation", verify_factorisation(obj, kind, tree)
    if isinstance(obj, PlaneTree):
        checks = [("plane_tree_well_formed", True)]
        for kind in KINDS:
            f = _factorisation_of_tree(obj, kind)
            checks.append((f"{kind}_roundtrip", _tree_of_factorisation(f, kind) == obj))
        return "plane_tree", checks
    if isinstance(obj, bij.LabeledTree):
        checks = [("labels_compatible", True)]
        if obj.fully_labeled:
            f = bij.factorisation_of_labeled_tree(obj)
            ok = obj.n == 1 or is_cycle_factorisation(f)
            checks.append(("minimal_factorisation", ok))
            if ok:
                checks.append(("next_recovers_vertex_labels",
                               bij.label_vertices(bij.strip_vertex_labels(obj)) == obj))
        return "labeled_tree", checks
    return "lamination", [("non_crossing_chords", True)]


def cmd_verify(cfg: RunConfig) -> int:
    d = _read_input(cfg.input)
    kind, checks = _verify_doc(d)
    failures = [name for name, ok in checks if not ok]
    report = {"schema": SCHEMA, "type": "verification", "object_type": kind,
              "passed": not failures, "checks": [{"name": k, "passed": ok} for k, ok in checks],
              "failures": failures}
    with _Output(cfg.out) as fh:
        if cfg.format == "text":
            for name, ok in checks:
                fh.write(f"{'PASS' if ok else 'FAIL'}  {name}\n")
        else:
            fh.write(dump_obj(report))
    return EXIT_OK if not failures else EXIT_FAIL


def _load_or_sample(cfg: RunConfig) -> Factorisation:
    if cfg.input:
        f = from_obj(_read_input(cfg.input))
        if not isinstance(f, Factorisation):
            raise MalformedInput("input must be a factorisation document")
        return f
    return _sample(_single_n(cfg), cfg.kind, cfg.seed)[1]


def cmd_lamination(cfg: RunConfig) -> int:
    f = _load_or_sample(cfg)
    try:
        proc = discrete_lamination_process(f)
    except ValueError as e:
        print(f"invariant failure: {e}", file=sys.stderr)
        return EXIT_FAIL
    t = Fraction(cfg.t)
    k = math.floor(proc.n * t)
    L = proc.snapshot(k)
    if cfg.format == "svg":
        title = f"n={f.n} kind={cfg.kind} seed={cfg.seed} t={t} k={k}"
        with _Output(cfg.out, binary=True) as fh:
            fh.write(render_svg(L, SvgOptions(title=title)))
    else:
        with _Output(cfg.out) as fh:
            fh.write(dump_obj(to_obj(L, n=f.n, t=[t.numerator, t.denominator], k=k)))
    return EXIT_OK


def _distance_one(args):
    n, seed, j, tol = args
    t = sample_uniform_plane_tree(n, make_rng(seed, n, j))
    return alignment_bound(bij.decreasing_factorisation_of_tree(t), tol)


def distance_table(ns: list[int], seeds: int, seed: int, tol: float) -> dict:
    rows = []
    for n in ns:
        if n < 2:
            raise UsageError("distance needs n >= 2")
        vals = pmap(_distance_one, [(n, seed, j, tol) for j in range(seeds)])
        q = np.quantile(vals, [0.1, 0.5, 0.9])
        rows.append({"n": n, "values": [round(v, 12) for v in vals], "q10": round(float(q[0]), 12),
                     "median": round(float(q[1]), 12), "q90": round(float(q[2]), 12)})
    meds = [r["median"] for r in rows]
    return {"schema": SCHEMA, "type": "alignment_table", "tol": tol, "seed": seed, "seeds": seeds,
            "rows": rows, "median_strictly_decreasing": all(x > y for x, y in zip(meds, meds[1:]))}


def cmd_distance(cfg: RunConfig) -> int:
    if cfg.kind != DECREASING:
        raise UsageError("distance is defined for decreasing factorisations")
    table = distance_table(cfg.n, cfg.trials, cfg.seed, cfg.tol)
    with _Output(cfg.out) as fh:
        if cfg.format == "text":
            fh.write(f"{'n':>8} {'q10':>10} {'median':>10} {'q90':>10}\n")
            for r in table["rows"]:
                fh.write(f"{r['n']:>8} {r['q10']:>10.5f} {r['median']:>10.5f} {r['q90']:>10.5f}\n")
        else:
            fh.write(dump_obj(table))
    return EXIT_OK


def cmd_stats(cfg: RunConfig) -> int:
    which = cfg.extra.get("which", "exact")
    n = _single_n(cfg)
    try:
        if which == "exact":
            rep = distinct_a_distribution_exact(n)
        elif which == "clt":
            rep = distinct_a_clt(n, cfg.trials, cfg.seed)
        elif which == "parking":
            rep = parking_cdf_fluctuation(n, cfg.trials, cfg.seed)
        else:
            rep = sampler_frequency_test(n, cfg.trials, cfg.seed)
    except ValueError as e:
        raise UsageError(str(e)) from None
    with _Output(cfg.out) as fh:
        if cfg.format == "text":
            fh.write(rep.to_text())
        else:
            d = rep.to_dict()
            d.update(schema=SCHEMA, type="report")
            fh.write(dump_obj(d))
    return EXIT_OK if rep.passed in (True, None) else EXIT_FAIL


def cmd_convert(cfg: RunConfig) -> int:
    obj = from_obj(_read_input(cfg.input))
    to = cfg.extra.get("to")
    if isinstance(obj, Factorisation):
        if not (obj.n == 1 or is_cycle_factorisation(obj)):
            print("invariant failure: not a minimal factorisation", file=sys.stderr)
            return EXIT_FAIL
        if to == "labeled_tree":
            out = bij.t1_forward(obj)
        else:
            try:
                out = _tree_of_factorisation(obj, cfg.kind)
            except ValueError as e:
                print(f"invariant failure: {e}", file=sys.stderr)
                return EXIT_FAIL
    elif isinstance(obj, PlaneTree):
        out = _factorisation_of_tree(obj, cfg.kind)
    elif isinstance(obj, bij.LabeledTree):
        out = bij.factorisation_from_edge_labels(obj) if to != "plane_tree" else obj.shape
    else:
        raise UsageError("laminations cannot be converted")
    with _Output(cfg.out) as fh:
        fh.write(dump_obj(to_obj(out)))
    return EXIT_OK


COMMANDS = {
    "sample": cmd_sample, "enumerate": cmd_enumerate, "verify": cmd_verify,
    "lamination": cmd_lamination, "distance": cmd_distance, "stats": cmd_stats, "convert": cmd_convert,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monofact", description="Monotone minimal factorisations of the long cycle.")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, n_many=False, formats=("json", "text")):
        sp.add_argument("--n", type=int, nargs="+" if n_many else None, required=False)
        sp.add_argument("--kind", default=DECREASING)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--out", default=None)
        return sp

    s = common(sub.add_parser("sample", help="uniform monotone factorisation"))
    s.add_argument("--with-tree", action="store_true", help="embed the generating plane tree")
    common(sub.add_parser("enumerate", help="all monotone factorisations, one JSON document per line"))
    s = common(sub.add_parser("verify", help="run the invariant suite on a serialised object"))
    s.add_argument("input", help="JSON file, or - for stdin")
    s = common(sub.add_parser("lamination", help="lamination snapshot at time t"), formats=("json", "svg"))
    s.add_argument("--t", default="1")
    s.add_argument("--input", default=None, help="factorisation document instead of sampling")
    s = common(sub.add_parser("distance", help="alignment bound over seeds and an n-grid"), n_many=True)
    s.add_argument("--trials", type=int, default=20, help="number of seeds per n")
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s = common(sub.add_parser("stats", help="distributional harnesses"))
    s.add_argument("which", choices=("exact", "clt", "parking", "sampler"))
    s.add_argument("--trials", type=int, default=1000)
    s = common(sub.add_parser("convert", help="factorisation <-> tree"))
    s.add_argument("input")
    s.add_argument("--to", choices=("plane_tree", "labeled_tree", "factorisation"), default=None)
    return p


def resolve(args: argparse.Namespace) -> RunConfig:
    ns = args.n if isinstance(args.n, list) else ([args.n] if args.n is not None else [])
    extra = {}
    for key in ("with_tree", "which", "to"):
        v = getattr(args, key, None)
        if v:
            extra[key] = v
    cfg = RunConfig(
        subcommand=args.subcommand, n=ns, kind=args.kind, seed=args.seed,
        trials=getattr(args, "trials", 1), t=str(getattr(args, "t", "1")),
        tol=getattr(args, "tol", DEFAULT_TOL), out=args.out, format=args.format,
        input=getattr(args, "input", None), extra=extra,
    )
    if not ns and not (cfg.input and cfg.subcommand in ("verify", "lamination", "convert")):
        raise UsageError("--n is required")
    cfg.validate()
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve(args)
        print("config: " + json.dumps(cfg.as_dict(), sort_keys=True), file=sys.stderr)
        return COMMANDS[cfg.subcommand](cfg)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"monofact: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except MalformedInput as e:
        print(f"malformed input: {e}", file=sys.stderr)
        return EXIT_IO
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
