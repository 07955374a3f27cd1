"""
Chords of the unit disk, the lamination process of a minimal factorisation,
the interpolated Łukasiewicz excursion and its good cords, and Hausdorff
distances between finite chord sets.

The point ``u`` of ``[0, 1]`` sits at ``exp(-2 i pi u)``, so ``0`` and ``1``
are the same point ``(1, 0)``. Every combinatorial predicate works in exact
``Fraction`` arithmetic; floats appear only when measuring distances.

>>> from fractions import Fraction as F
>>> chords_cross(Chord(0, F(1, 2)), Chord(F(1, 4), F(3, 4)))
True
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .perm import Factorisation, is_cycle_factorisation, is_decreasing
from .tree import LukaPath, PlaneTree, lukasiewicz_path

__all__ = [
    "Chord", "Lamination", "StepLaminationProcess", "WalkExcursion", "RankData",
    "PiecewiseLinear", "chords_cross", "discrete_lamination_process", "rank_data",
    "good_cord_for_index", "is_good_cord", "enumerate_good_cords", "alignment_time_change",
    "hausdorff_distance", "directed_distance", "alignment_bound", "AlignmentResult",
    "render_svg", "SvgOptions", "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-4
TWO_PI = 2 * math.pi


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("chord endpoints must be exact (int, Fraction or 'p/q' string)")
    return Fraction(x)


@dataclass(frozen=True, order=True)
class Chord:
    """``[[u, v]]``: the segment between ``exp(-2 i pi u)`` and ``exp(-2 i pi v)``."""
    u: Fraction
    v: Fraction

    def __post_init__(self):
        u, v = _frac(self.u), _frac(self.v)
        if not 0 <= u <= v <= 1:
            raise ValueError(f"need 0 <= u <= v <= 1, got [[{u}, {v}]]")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def trivial(self) -> bool:
        return self.u == self.v or (self.u == 0 and self.v == 1)

    def circle_endpoints(self) -> tuple[Fraction, Fraction]:
        """Endpoints reduced mod 1 and sorted (``1`` becomes ``0``)."""
        a, b = self.u % 1, self.v % 1
        return (a, b) if a <= b else (b, a)

    def points(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return _point(self.u), _point(self.v)

    def __repr__(self):
        return f"[[{self.u}, {self.v}]]"


def _point(u) -> tuple[float, float]:
    ang = TWO_PI * float(u)
    return math.cos(ang), -math.sin(ang)


def chords_cross(c1: Chord, c2: Chord) -> bool:
    """True iff the endpoints strictly interleave around the circle."""
    a1, b1 = c1.circle_endpoints()
    a2, b2 = c2.circle_endpoints()
    if a1 == b1 or a2 == b2:
        return False
    return a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1


def _first_crossing(chords: Iterable[Chord]):
    """A crossing pair, or ``None``; sort-and-stack sweep in ``O(m log m)``."""
    ivs = sorted(
        {(a, b, c) for c in chords for a, b in [c.circle_endpoints()] if a != b},
        key=lambda x: (x[0], -x[1]),
    )
    stack: list[tuple[Fraction, Chord]] = []
    for a, b, c in ivs:
        while stack and stack[-1][0] <= a:
            stack.pop()
        if stack and b > stack[-1][0]:
            return stack[-1][1], c
        stack.append((b, c))
    return None


@dataclass(frozen=True)
class Lamination:
    """A finite set of pairwise non-crossing chords, stored sorted."""
    chords: tuple[Chord, ...]

    def __post_init__(self):
        cs = tuple(sorted(set(c if isinstance(c, Chord) else Chord(*c) for c in self.chords)))
        bad = _first_crossing(cs)
        if bad is not None:
            raise ValueError(f"chords {bad[0]!r} and {bad[1]!r} cross")
        object.__setattr__(self, "chords", cs)

    def __len__(self):
        return len(self.chords)

    def __iter__(self):
        return iter(self.chords)

    def __contains__(self, c):
        return c in set(self.chords)

    def segments(self) -> np.ndarray:
        return _segments(self.chords)


POINT_ZERO = Chord(0, 0)
POINT_ONE = Chord(1, 1)


@dataclass(frozen=True)
class StepLaminationProcess:
    """Cumulative chords ``[[a_i/n, b_i/n]]`` jumping at times ``i/n``.

    ``snapshot(0)`` is the point ``[[0, 0]]``, ``snapshot(k)`` holds the first
    ``k`` chords and ``snapshot(n) = snapshot(n - 1)``. Snapshots are built on
    demand since storing all of them costs ``O(n^2)``.
    """
    n: int
    chords: tuple[Chord, ...]

    def snapshot(self, k: int) -> Lamination:
        if not 0 <= k <= self.n:
            raise ValueError(f"k must lie in [0, {self.n}]")
        if k == 0:
            return Lamination((POINT_ZERO,))
        return Lamination(self.chords[: min(k, self.n - 1)])

    @property
    def snapshots(self) -> list[Lamination]:
        return [self.snapshot(k) for k in range(self.n + 1)]

    def at(self, t) -> Lamination:
        """``L_{floor(n t)}`` for ``t`` in ``[0, 1]``."""
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise ValueError("t must lie in [0, 1]")
        return self.snapshot(math.floor(self.n * t))


def discrete_lamination_process(f: Factorisation) -> StepLaminationProcess:
    n = f.n
    if n == 1:
        return StepLaminationProcess(1, ())
    if not is_cycle_factorisation(f):
        raise ValueError("not a minimal factorisation of the long cycle")
    chords = tuple(Chord(Fraction(t.a, n), Fraction(t.b, n)) for t in f.taus)
    # snapshots are prefixes, so checking the full set checks them all
    bad = _first_crossing(chords)
    if bad is not None:
        raise ValueError(f"chords {bad[0]!r} and {bad[1]!r} cross")
    return StepLaminationProcess(n, chords)


# -- walk excursion and good cords --------------------------------------------

@dataclass(frozen=True)
class WalkExcursion:
    """``t -> S_{(n-1) t}`` linearly interpolated, for ``t`` in ``[0, 1]``."""
    path: LukaPath

    @classmethod
    def of_tree(cls, t: PlaneTree) -> "WalkExcursion":
        return cls(lukasiewicz_path(t))

    @property
    def n(self) -> int:
        return self.path.n

    @property
    def m(self) -> int:
        return self.path.n - 1

    def query(self, t) -> Fraction:
        t = Fraction(t)
        if not 0 <= t <= 1:
            raise ValueError("t must lie in [0, 1]")
        if self.m == 0:
            return Fraction(0)
        x = t * self.m
        k = math.floor(x)
        if k == self.m:
            return Fraction(self.path[k])
        s0, s1 = self.path[k], self.path[k + 1]
        return s0 + (x - k) * (s1 - s0)

    def min_on(self, u: Fraction, v: Fraction) -> Fraction:
        vals = [self.query(u), self.query(v)]
        lo, hi = math.floor(u * self.m) + 1, math.ceil(v * self.m) - 1
        vals.extend(self.path[j] for j in range(lo, hi + 1))
        return min(vals)

    def slope_left(self, t: Fraction) -> int:
        # slope of the linear piece ending at t (t > 0), in walk units
        k = math.ceil(t * self.m) - 1
        return self.path[k + 1] - self.path[k]

    def slope_right(self, t: Fraction) -> int:
        k = math.floor(t * self.m)
        return self.path[k + 1] - self.path[k]


def is_cord(w: WalkExcursion, c: Chord) -> bool:
    fu, fv = w.query(c.u), w.query(c.v)
    return fu == fv and w.min_on(c.u, c.v) == fu


def is_good_cord(w: WalkExcursion, c: Chord) -> bool:
    """Maximal cord of the excursion whose right end lies on the lattice ``j/(n-1)``.

    A cord ``[[u, v]]`` extends to the left iff ``u > 0`` and the walk does
    not rise strictly into ``u`` (it then comes back to the level ``w(u)``
    further left without dipping below it); symmetrically on the right.
    """
    if w.m == 0:
        return c.u == 0 and c.v == 0
    if (c.v * w.m).denominator != 1:
        return False
    if not is_cord(w, c):
        return False
    if c.u > 0 and w.slope_left(c.u) <= 0:
        return False
    if c.v < 1 and w.slope_right(c.v) >= 0:
        return False
    return True


def enumerate_good_cords(w: WalkExcursion) -> list[Chord]:
    """All good cords, sorted by left endpoint.

    A good cord ends at a lattice time ``j`` where the walk steps down (or at
    ``j = n - 1``); its left end is where the walk last rose through level
    ``S_j`` before ``j``, found with a previous-strictly-smaller stack.
    Strict local maxima come out as trivial cords ``[[j, j]]``.
    """
    m = w.m
    if m == 0:
        return [POINT_ZERO]
    S = w.path.values
    out = []
    stack: list[int] = []  # indices with strictly increasing S
    for j in range(m + 1):
        while stack and S[stack[-1]] >= S[j]:
            stack.pop()
        if j == m or S[j + 1] < S[j]:
            if stack:
                k = stack[-1]
                u = k + Fraction(S[j] - S[k], S[k + 1] - S[k])
            else:
                u = Fraction(0)
            out.append(Chord(u / m, Fraction(j, m)))
        stack.append(j)
    out.sort()
    return out


@dataclass(frozen=True)
class RankData:
    """Siblings ``s(i)`` and ranks ``r(i)`` of a decreasing factorisation (1-based ``i``)."""
    n: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    s: tuple[int, ...]
    r: tuple[int, ...]

    def h(self, i: int) -> Fraction | None:
        r, s = self.r[i - 1], self.s[i - 1]
        if r < 2:
            return None
        return Fraction(r - 2, s - 1)


def rank_data(f: Factorisation) -> RankData:
    if not is_decreasing(f):
        raise ValueError("expected a decreasing factorisation")
    return _rank_arrays(f.n, f.a, f.b)


def _rank_arrays(n, a, b) -> RankData:
    counts: dict[int, int] = {}
    r = []
    for x in a:
        counts[x] = counts.get(x, 0) + 1
        r.append(counts[x])
    s = [counts[x] for x in a]
    return RankData(n, tuple(a), tuple(b), tuple(s), tuple(r))


def _good_cord(rd: RankData, i: int) -> Chord:
    h = rd.h(i)
    if h is None:
        raise ValueError(f"index {i} has rank 1, no associated good cord")
    m = rd.n - 1
    return Chord((rd.a[i - 1] - h) / m, Fraction(rd.b[i - 1] - 2, m))


def good_cord_for_index(f: Factorisation, i: int) -> Chord:
    """``[[(a_i - h(i))/(n-1), (b_i - 2)/(n-1)]]`` with ``h(i) = (r(i)-2)/(s(i)-1)``."""
    if not 1 <= i <= f.n - 1:
        raise ValueError(f"index must lie in [1, {f.n - 1}]")
    return _good_cord(rank_data(f), i)


# -- time change --------------------------------------------------------------

@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous map given by breakpoints, strictly increasing in ``x``."""
    xs: tuple[Fraction, ...]
    ys: tuple[Fraction, ...]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        k = bisect_left(self.xs, x)
        if k < len(self.xs) and self.xs[k] == x:
            return self.ys[k]
        if k == 0 or k == len(self.xs):
            raise ValueError("argument outside the domain")
        x0, x1, y0, y1 = self.xs[k - 1], self.xs[k], self.ys[k - 1], self.ys[k]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def breakpoints(self) -> list[tuple[Fraction, Fraction]]:
        return list(zip(self.xs, self.ys))

    def sup_distance_to_identity(self) -> Fraction:
        return max(abs(y - x) for x, y in zip(self.xs, self.ys))


def alignment_time_change(f: Factorisation) -> PiecewiseLinear:
    """``phi(i/n) = 1 - (a_i - h(i))/(n-1)`` over indices of rank at least 2,
    with ``phi(0) = 0`` and ``phi(1) = 1``. Raises if the breakpoints fail to
    be strictly increasing."""
    if f.n < 2:
        raise ValueError("need n >= 2")
    return _time_change(rank_data(f))


def _time_change(rd: RankData) -> PiecewiseLinear:
    n, m = rd.n, rd.n - 1
    xs, ys = [Fraction(0)], [Fraction(0)]
    for i in range(1, n):
        h = rd.h(i)
        if h is not None:
            xs.append(Fraction(i, n))
            ys.append(1 - (rd.a[i - 1] - h) / m)
    xs.append(Fraction(1))
    ys.append(Fraction(1))
    for k in range(1, len(xs)):
        if not ys[k] > ys[k - 1]:
            raise ValueError(f"time change not strictly increasing at x={xs[k]}: "
                             f"{ys[k - 1]} -> {ys[k]}")
    return PiecewiseLinear(tuple(xs), tuple(ys))


# -- distances ----------------------------------------------------------------

def _segments(chords: Sequence[Chord]) -> np.ndarray:
    """``(m, 4)`` array of segment endpoints ``x0, y0, x1, y1``."""
    if not chords:
        return np.zeros((0, 4))
    u = np.array([float(c.u) for c in chords]) * TWO_PI
    v = np.array([float(c.v) for c in chords]) * TWO_PI
    return np.stack([np.cos(u), -np.sin(u), np.cos(v), -np.sin(v)], axis=1)


def _point_set_distance(px: np.ndarray, py: np.ndarray, seg: np.ndarray, chunk: int = 1 << 22) -> np.ndarray:
    """Distance from each point to the union of segments (exact up to rounding)."""
    out = np.empty(len(px))
    ax, ay, bx, by = (seg[:, j][None, :] for j in range(4))
    dx, dy = bx - ax, by - ay
    ll = dx * dx + dy * dy
    safe = np.where(ll > 0, ll, 1.0)
    step = max(1, chunk // max(1, len(seg)))
    for lo in range(0, len(px), step):
        x = px[lo:lo + step, None]
        y = py[lo:lo + step, None]
        t = np.clip(((x - ax) * dx + (y - ay) * dy) / safe, 0.0, 1.0)
        t = np.where(ll > 0, t, 0.0)
        ex, ey = ax + t * dx - x, ay + t * dy - y
        out[lo:lo + step] = np.sqrt((ex * ex + ey * ey).min(axis=1))
    return out


def _sample_segments(seg: np.ndarray, spacing: float):
    xs, ys = [], []
    for x0, y0, x1, y1 in seg:
        length = math.hypot(x1 - x0, y1 - y0)
        k = max(1, math.ceil(length / spacing))
        t = np.linspace(0.0, 1.0, k + 1)
        xs.append(x0 + t * (x1 - x0))
        ys.append(y0 + t * (y1 - y0))
    return np.concatenate(xs), np.concatenate(ys)


def directed_distance(A: Iterable[Chord], B: Iterable[Chord], tol: float = DEFAULT_TOL) -> float:
    """``sup_{p in A} d(p, B)`` within ``tol``, by sampling ``A`` every ``2 tol``."""
    sa, sb = _segments(list(A)), _segments(list(B))
    if len(sa) == 0 or len(sb) == 0:
        raise ValueError("distance to or from an empty set")
    px, py = _sample_segments(sa, 2 * tol)
    return float(_point_set_distance(px, py, sb).max())


def hausdorff_distance(A: Lamination | Iterable[Chord], B: Lamination | Iterable[Chord],
                       tol: float = DEFAULT_TOL) -> float:
    """Hausdorff distance between two finite unions of chords, within ``tol``.

    Each chord is sampled uniformly with spacing at most ``2 tol``, endpoints
    included; every point of a chord is then within ``tol`` of a sample, and
    distance-to-a-set is 1-Lipschitz. Distances from samples to the other set
    are computed exactly against its segments.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    A, B = list(A), list(B)
    if not A or not B:
        raise ValueError("Hausdorff distance needs non-empty sets")
    return max(directed_distance(A, B, tol), directed_distance(B, A, tol))


def _directed_sup_bb(seg: np.ndarray, target: np.ndarray, lower: float, tol: float) -> float:
    """Certified ``sup`` over one segment of the distance to ``target``.

    Branch and bound on the segment parameter: an interval of Euclidean length
    ``L`` whose midpoint is at distance ``d`` cannot exceed ``d + L/2``.
    Intervals that cannot beat ``lower + tol`` are dropped. Returns a value
    ``>= lower`` that is within ``tol`` of ``max(lower, true sup)``.
    """
    x0, y0, x1, y1 = seg
    length = math.hypot(x1 - x0, y1 - y0)
    ends = _point_set_distance(np.array([x0, x1]), np.array([y0, y1]), target)
    best = max(lower, float(ends.max()))
    if length == 0:
        return best
    lo = np.array([0.0])
    width = 1.0
    while len(lo):
        mid = lo + width / 2
        d = _point_set_distance(x0 + mid * (x1 - x0), y0 + mid * (y1 - y0), target)
        best = max(best, float(d.max()))
        half = width * length / 2
        keep = d + half > best + tol
        lo = lo[keep]
        if not len(lo):
            break
        width /= 2
        lo = np.concatenate([lo, lo + width])
    return best


@dataclass(frozen=True)
class AlignmentResult:
    value: float
    time_term: Fraction
    chord_term: float
    good_cord_term: float
    tol: float


def alignment_bound(f: Factorisation, tol: float = DEFAULT_TOL, detail: bool = False):
    """Upper-bound diagnostic ``D_n`` for the distance between the lamination
    process of ``f`` and the good-cord process of its walk.

    ``D_n = max(sup |phi - id|, max_i d_H(L_i, G_{phi(i/n)}))`` where ``phi``
    is :func:`alignment_time_change`, ``L_i`` the snapshots of the lamination
    process and ``G_s = {[[1,1]]} U {good cords [[u,v]] with u >= 1 - s}``.

    Both families are nested in ``i``, so every directed distance only needs
    evaluating once: each chord ``c_k`` against ``G_{phi(k/n)}`` and each good
    cord against the first snapshot containing it in ``G``. The sups along
    chords are certified by branch and bound to within ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = f.n
    if n < 2:
        raise ValueError("need n >= 2")
    if not is_cycle_factorisation(f):
        raise ValueError("not a minimal factorisation of the long cycle")
    rd = rank_data(f)
    phi = _time_change(rd)
    # the walk of the tree attached to f; its good cords via the scan
    from .bijection import tree_of_decreasing_factorisation
    w = WalkExcursion.of_tree(tree_of_decreasing_factorisation(f))
    return _alignment(n, list(zip(rd.a, rd.b)), phi, enumerate_good_cords(w), tol, detail)


def _alignment(n, pairs, phi: PiecewiseLinear, good: list[Chord], tol: float, detail: bool):
    time_term = phi.sup_distance_to_identity()
    phis = [phi(Fraction(i, n)) for i in range(n + 1)]
    lower = float(time_term)

    chords = [Chord(Fraction(a, n), Fraction(b, n)) for a, b in pairs]
    cseg = _segments(chords)
    # G as a growing prefix: [[1,1]] first, then good cords by decreasing u
    gs = [POINT_ONE] + sorted(good, key=lambda c: c.u, reverse=True)
    gseg = _segments(gs)
    thresholds = [1 - c.u for c in gs]  # cord j belongs to G_s iff s >= thresholds[j]

    # i = 0: {[[0,0]]} against G_0 = {[[1,1]]} (plus cords with u = 1): both the point (1, 0)
    best = lower
    for k in range(1, n):
        target = gseg[: _count_le(thresholds, phis[k])]
        best = _directed_sup_bb(cseg[k - 1], target, best, tol)
    chord_term = best
    for j, c in enumerate(gs):
        # first i >= 1 with phi(i/n) >= 1 - u, capped at the last non-empty snapshot
        i = max(1, _first_at_least(phis, thresholds[j]))
        i = min(i, n - 1)
        best = _directed_sup_bb(gseg[j], cseg[:i], best, tol)
    good_term = best
    value = best
    if detail:
        return AlignmentResult(value, time_term, chord_term, good_term, tol)
    return value


def _count_le(sorted_vals, s):
    # thresholds are non-decreasing: number of entries <= s
    lo, hi = 0, len(sorted_vals)
    while lo < hi:
        mid = (lo + hi) // 2
        if sorted_vals[mid] <= s:
            lo = mid + 1
        else:
            hi = mid
    return lo


def _first_at_least(vals, s):
    return bisect_left(vals, s)


# -- rendering ----------------------------------------------------------------

@dataclass(frozen=True)
class SvgOptions:
    size: int = 400
    margin: int = 10
    stroke_width: float = 1.0
    point_radius: float = 3.0
    chord_color: str = "#1f4e99"
    circle_color: str = "#000000"
    title: str = ""


def render_svg(L: Lamination, options: SvgOptions | None = None) -> bytes:
    """Deterministic SVG 1.1 picture: the unit circle, one line per chord and a
    dot for each chord that degenerates to a point."""
    o = options or SvgOptions()
    r = (o.size - 2 * o.margin) / 2
    c = o.size / 2

    def xy(u):
        x, y = _point(u)
        # SVG y axis points down
        return f"{c + r * x:.4f}", f"{c - r * y:.4f}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{o.size}" '
        f'height="{o.size}" viewBox="0 0 {o.size} {o.size}">',
        f"<desc>chords={len(L)} size={o.size} margin={o.margin} "
        f"stroke_width={o.stroke_width} point_radius={o.point_radius}</desc>",
    ]
    if o.title:
        lines.append(f"<title>{_xml_escape(o.title)}</title>")
    lines.append(f'<circle cx="{c:.4f}" cy="{c:.4f}" r="{r:.4f}" fill="none" '
                 f'stroke="{o.circle_color}" stroke-width="{o.stroke_width}"/>')
    for ch in L:
        if ch.trivial:
            x, y = xy(ch.u)
            lines.append(f'<circle cx="{x}" cy="{y}" r="{o.point_radius}" fill="{o.chord_color}"/>')
        else:
            x1, y1 = xy(ch.u)
            x2, y2 = xy(ch.v)
            lines.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                         f'stroke="{o.chord_color}" stroke-width="{o.stroke_width}"/>')
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _xml_escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
