"""
Verification harnesses for the distributional statements about decreasing and
increasing factorisations: exact small-n tables, Monte Carlo checks at large
``n``, and exact per-object identities.

Monte Carlo trial ``j`` of a run with seed ``s`` draws from
``make_rng(s, j)``, so reports are reproducible and independent of how trials
are split across worker processes (``MONOFACT_WORKERS``).
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb

import numpy as np
from scipy import stats as sps

from .bijection import t1_forward, tree_of_decreasing_factorisation
from .perm import (DECREASING, Factorisation, enumerate_monotone_factorisations,
                   is_increasing)
from .tree import (catalan, count_non_leaves, enumerate_plane_trees, lukasiewicz_path,
                   make_rng, sample_children_counts)

__all__ = [
    "THRESHOLDS", "DistributionReport", "distinct_a_distribution_exact", "distinct_a_clt",
    "parking_cdf_fluctuation", "parking_sup_deviation", "parking_sup_deviation_walk",
    "profile_identity_check", "increasing_partition_check", "sampler_frequency_test",
    "narayana", "printed_distinct_a_formula", "MAX_EXACT_N", "pmap",
]

MAX_EXACT_N = 10

# acceptance thresholds for the Monte Carlo harnesses
THRESHOLDS = {
    "clt_abs_mean": 0.1,
    "clt_var_low": 0.9,
    "clt_var_high": 1.1,
    "clt_ks": 0.05,
    "parking_median_rel_diff": 0.10,
    "sampler_max_deviation": 5e-4,
    "sampler_chi2_min_pvalue": 1e-3,
}


@dataclass
class DistributionReport:
    name: str
    n: int
    support: list
    probabilities: list
    sample_size: int | None = None
    statistics: dict = field(default_factory=dict)
    thresholds: dict = field(default_factory=dict)
    passed: bool | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.probabilities:
            total = sum(float(p) for p in self.probabilities)
            if abs(total - 1) > 1e-12:
                raise ValueError(f"probabilities sum to {total}")

    def to_dict(self) -> dict:
        return _jsonable(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"{self.name}  n={self.n}" + (f"  samples={self.sample_size}" if self.sample_size else "")]
        if self.support:
            w = max(len(str(s)) for s in self.support)
            for s, p in zip(self.support, self.probabilities):
                lines.append(f"  {str(s):>{w}}  {_fmt(p)}")
        for k in sorted(self.statistics):
            lines.append(f"  {k:<28} {_fmt(self.statistics[k])}")
        for k in sorted(self.thresholds):
            lines.append(f"  threshold {k:<18} {_fmt(self.thresholds[k])}")
        if self.passed is not None:
            lines.append(f"  {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return f"{str(x):>12}  ({float(x):.6f})"
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


# -- exact law of the number of distinct a-values ------------------------------

def narayana(m: int, k: int) -> int:
    if not 1 <= k <= m:
        return 0
    return comb(m, k) * comb(m, k - 1) // m


def printed_distinct_a_formula(n: int, k: int) -> Fraction:
    """``(n+1)/(n-1) C(n-1,k) C(n-1,k-1) / C(2n,n)`` as it is usually quoted.

    Kept for comparison only: it does not sum to 1 (mass ``2/5`` at ``n = 3``).
    """
    return Fraction(n + 1, n - 1) * comb(n - 1, k) * comb(n - 1, k - 1) / comb(2 * n, n)


def distinct_a_distribution_exact(n: int) -> DistributionReport:
    """Law of ``#{a_1, ..., a_{n-1}}`` for a uniform decreasing factorisation.

    Computed by brute-force enumeration of the factorisations and by the
    non-leaf counts of plane trees; the two must agree exactly. The Narayana
    closed form ``N(n-1, k) / Catalan(n-1)`` is checked as well.
    """
    if not 2 <= n <= MAX_EXACT_N:
        raise ValueError(f"exact distribution supports 2 <= n <= {MAX_EXACT_N}")
    by_fact: dict[int, int] = {}
    facts = enumerate_monotone_factorisations(n, DECREASING)
    for f in facts:
        k = len(set(f.a))
        by_fact[k] = by_fact.get(k, 0) + 1
    by_tree: dict[int, int] = {}
    trees = enumerate_plane_trees(n)
    for t in trees:
        k = count_non_leaves(t)
        by_tree[k] = by_tree.get(k, 0) + 1
    if by_fact != by_tree:
        raise AssertionError(f"routes disagree: {by_fact} vs {by_tree}")
    total = len(facts)
    support = sorted(by_fact)
    probs = [Fraction(by_fact[k], total) for k in support]
    closed = [Fraction(narayana(n - 1, k), catalan(n - 1)) for k in support]
    printed = {k: printed_distinct_a_formula(n, k) for k in range(1, n)}
    return DistributionReport(
        name="distinct_a_exact", n=n, support=support, probabilities=probs, sample_size=total,
        statistics={"narayana_matches": closed == probs,
                    "printed_formula_mass": sum(printed.values(), Fraction(0))},
        passed=closed == probs and total == catalan(n - 1),
        extra={"counts": by_fact, "narayana": dict(zip(support, closed)), "printed_formula": printed},
    )


# -- Monte Carlo plumbing ------------------------------------------------------

def _workers() -> int:
    try:
        return max(1, int(os.environ.get("MONOFACT_WORKERS", "1")))
    except ValueError:
        return 1


def pmap(fn, items) -> list:
    """``[fn(x) for x in items]``, spread over ``MONOFACT_WORKERS`` processes.

    Results come back in input order, so reductions do not depend on scheduling.
    """
    items = list(items)
    w = _workers()
    if w == 1 or len(items) < 2 * w:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=w) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * w))))


def _run_trials(fn, n: int, seed: int, trials: int) -> list:
    return pmap(fn, [(n, seed, j) for j in range(trials)])


def _counts(n: int, seed: int, j: int) -> np.ndarray:
    return sample_children_counts(n, 1, make_rng(seed, j))[0]


def _decreasing_a(counts: np.ndarray) -> np.ndarray:
    # a-values of the decreasing factorisation: the parent label of every edge,
    # listed here in sorted order (vertex i contributes c_i copies of i)
    return np.repeat(np.arange(1, len(counts) + 1), counts)


def _distinct_a_trial(args):
    n, seed, j = args
    return int(np.unique(_decreasing_a(_counts(n, seed, j))).size)


def distinct_a_clt(n: int, trials: int, seed: int) -> DistributionReport:
    """Standardised ``(#distinct a - n/2) / sqrt(n/8)`` over uniform samples."""
    if n < 100 or trials < 100:
        raise ValueError("need n >= 100 and trials >= 100")
    vals = np.array(_run_trials(_distinct_a_trial, n, seed, trials), dtype=float)
    z = (vals - n / 2) / math.sqrt(n / 8)
    mean, var = float(z.mean()), float(z.var(ddof=1))
    ks = float(sps.kstest(z, "norm").statistic)
    th = {k: THRESHOLDS[k] for k in ("clt_abs_mean", "clt_var_low", "clt_var_high", "clt_ks")}
    ok = abs(mean) < th["clt_abs_mean"] and th["clt_var_low"] <= var <= th["clt_var_high"] and ks < th["clt_ks"]
    return DistributionReport(
        name="distinct_a_clt", n=n, support=[], probabilities=[], sample_size=trials,
        statistics={"mean": mean, "variance": var, "ks_distance": ks, "seed": seed},
        thresholds=th, passed=ok,
    )


# -- parking functions ----------------------------------------------------------

def parking_sup_deviation(pi) -> Fraction:
    """``sup_x |F(x) - x|`` with ``F(x) = #{i : pi_i <= m x} / m``, ``m = len(pi)``.

    ``F`` is a step function, so the sup is attained at a jump: on
    ``[k/m, (k+1)/m)`` the gap ranges over ``(c_k - k - 1)/m .. (c_k - k)/m``
    where ``c_k = #{pi_i <= k}``.
    """
    m = len(pi)
    if m == 0:
        return Fraction(0)
    cnt = np.bincount(np.asarray(pi, dtype=np.int64), minlength=m + 2)
    c = np.cumsum(cnt)[:m]  # c_k for k = 0..m-1
    k = np.arange(m)
    return Fraction(int(max((c - k).max(), (k + 1 - c).max())), m)


def parking_sup_deviation_walk(counts) -> Fraction:
    """Same quantity from the Łukasiewicz walk of the tree: ``#{a_j <= k} = S_k + k``."""
    m = len(counts) - 1
    if m == 0:
        return Fraction(0)
    s = np.cumsum(np.asarray(counts, dtype=np.int64) - 1)[:m]
    s = np.concatenate([[0], s[: m - 1]])  # S_0..S_{m-1}
    return Fraction(int(max(s.max(), (1 - s).max())), m)


def _parking_trial(args):
    n, seed, j = args
    counts = _counts(n, seed, j)
    a = _decreasing_a(counts)
    d = parking_sup_deviation(a)
    d_walk = parking_sup_deviation_walk(counts)
    return float(d), float(d_walk), int(counts.max())


def parking_cdf_fluctuation(n: int, trials: int, seed: int) -> DistributionReport:
    """``sqrt(m/2) sup_x |F_pi(x) - x|`` for ``pi`` the increasing parking
    function of a uniform decreasing factorisation of size ``n`` (``m = n - 1``)."""
    if n < 100:
        raise ValueError("need n >= 100")
    res = _run_trials(_parking_trial, n, seed, trials)
    m = n - 1
    scale = math.sqrt(m / 2)
    stat = np.array([r[0] for r in res]) * scale
    walk_gap = max(abs(r[0] - r[1]) * scale for r in res)
    walk_bound = max(r[2] for r in res) / math.sqrt(2 * n)
    qs = np.quantile(stat, [0.1, 0.25, 0.5, 0.75, 0.9])
    return DistributionReport(
        name="parking_cdf_fluctuation", n=n, support=[], probabilities=[], sample_size=trials,
        statistics={"median": float(qs[2]), "q10": float(qs[0]), "q25": float(qs[1]),
                    "q75": float(qs[3]), "q90": float(qs[4]), "mean": float(stat.mean()),
                    "max": float(stat.max()), "walk_route_max_gap": float(walk_gap),
                    "walk_route_bound": float(walk_bound), "seed": seed},
        passed=bool(stat.max() < scale and walk_gap <= walk_bound),
    )


# -- exact per-object checks -----------------------------------------------------

def profile_identity_check(f: Factorisation) -> bool:
    """``S_{a-1} <= n - i - a = S_{a-1} + s(i) - r(i) <= S_a`` for every ``i``,
    where ``a = a_i`` and ``S`` is the walk of the tree of ``f``."""
    n = f.n
    if n == 1:
        return True
    S = lukasiewicz_path(tree_of_decreasing_factorisation(f)).values
    counts: dict[int, int] = {}
    for x in f.a:
        counts[x] = counts.get(x, 0) + 1
    seen: dict[int, int] = {}
    for i, a in enumerate(f.a, 1):
        seen[a] = seen.get(a, 0) + 1
        mid = n - i - a
        if not (S[a - 1] <= mid <= S[a] and mid == S[a - 1] + counts[a] - seen[a]):
            return False
    return True


def increasing_partition_check(f: Factorisation) -> bool:
    """For increasing ``f``: the a-values and b-values partition ``{1..n}``, and
    the a-values are exactly the labels of the even-height vertices of its tree."""
    if not is_increasing(f):
        return False
    n = f.n
    A, B = set(f.a), set(f.b)
    if A & B or A | B != set(range(1, n + 1)):
        return False
    t = t1_forward(f)
    even = {lab for lab, h in zip(t.vertex_labels, t.shape.heights) if h % 2 == 0}
    return even == A


def sampler_frequency_test(n: int, draws: int, seed: int) -> DistributionReport:
    """Empirical frequencies of the shapes drawn by the tree sampler against the
    uniform law on the ``Catalan(n-1)`` plane trees, with a chi-square test."""
    trees = enumerate_plane_trees(n)
    # encode each children-count row as an integer to count without Python loops
    base = np.int64(n) ** np.arange(n, dtype=np.int64)
    codes = np.array([t.children_counts for t in trees], dtype=np.int64) @ base
    order = np.argsort(codes)
    rng = make_rng(seed)
    freq = np.zeros(len(trees), dtype=np.int64)
    batch = 1 << 16
    done = 0
    while done < draws:
        rows = sample_children_counts(n, min(batch, draws - done), rng)
        pos = order[np.searchsorted(codes, rows @ base, sorter=order)]
        freq += np.bincount(pos, minlength=len(trees))
        done += len(rows)
    p = freq / draws
    dev = float(np.abs(p - 1 / len(trees)).max())
    chi = sps.chisquare(freq)
    q = 1 / len(trees)
    # the fixed threshold is tight for many shapes; with few shapes a single
    # standard error exceeds it, so allow five standard errors
    th = max(THRESHOLDS["sampler_max_deviation"], 5 * math.sqrt(q * (1 - q) / draws))
    ok = dev < th and chi.pvalue > THRESHOLDS["sampler_chi2_min_pvalue"]
    return DistributionReport(
        name="sampler_frequency", n=n, support=[list(t.children_counts) for t in trees],
        probabilities=[Fraction(int(c), draws) for c in freq], sample_size=draws,
        statistics={"max_deviation": dev, "chi2": float(chi.statistic), "chi2_pvalue": float(chi.pvalue)},
        thresholds={"sampler_max_deviation": th,
                    "sampler_chi2_min_pvalue": THRESHOLDS["sampler_chi2_min_pvalue"]}, passed=bool(ok),
    )
