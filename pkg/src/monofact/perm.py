"""
Transpositions, minimal factorisations of the long cycle (1 2 ... n) and the
two classical reductions of decreasing factorisations (parking words and
231-avoiding words).

Composition convention: a factorisation ``(t_1, ..., t_{n-1})`` is read as the
product ``t_{n-1} o ... o t_1``, i.e. ``t_1`` is applied first.

>>> f = Factorisation.from_pairs([(1, 2), (1, 3)])
>>> is_cycle_factorisation(f), monotone_class(f)
(True, 'both')
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Transposition", "Factorisation", "DECREASING", "INCREASING", "BOTH", "NEITHER",
    "compose", "is_cycle_factorisation", "monotone_class", "is_decreasing",
    "is_increasing", "to_parking_word", "to_231_word", "is_231_avoiding",
    "is_increasing_parking_function", "enumerate_minimal_factorisations",
    "enumerate_monotone_factorisations", "MAX_ENUMERATION_N",
]

DECREASING = "decreasing"
INCREASING = "increasing"
BOTH = "both"
NEITHER = "neither"

# brute-force oracle cap, n^(n-2) grows too fast beyond this
MAX_ENUMERATION_N = 7
# the monotone DFS only visits prefixes of monotone factorisations
MAX_MONOTONE_ENUMERATION_N = 12


@dataclass(frozen=True, order=True, slots=True)
class Transposition:
    """The transposition ``(a b)``, stored with ``a < b``."""
    a: int
    b: int

    def __post_init__(self):
        a, b = int(self.a), int(self.b)
        if a == b:
            raise ValueError(f"degenerate transposition ({a} {b})")
        if a > b:
            a, b = b, a
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __iter__(self):
        return iter((self.a, self.b))

    def __repr__(self):
        return f"({self.a} {self.b})"


@dataclass(frozen=True)
class Factorisation:
    """A sequence of ``n - 1`` transpositions on ``{1..n}``.

    Only well-formedness is checked here; whether the product is the long
    cycle is the job of :func:`is_cycle_factorisation`. ``n = 1`` (the empty
    factorisation) is allowed so that the single-vertex tree has an image.
    """
    n: int
    taus: tuple[Transposition, ...] = field(default=())

    def __post_init__(self):
        n = int(self.n)
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        taus = tuple(t if isinstance(t, Transposition) else Transposition(*t) for t in self.taus)
        if len(taus) != n - 1:
            raise ValueError(f"expected {n - 1} transpositions for n={n}, got {len(taus)}")
        for t in taus:
            if not (1 <= t.a and t.b <= n):
                raise ValueError(f"transposition {t!r} has an endpoint outside [1, {n}]")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "taus", taus)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]], n: int | None = None) -> "Factorisation":
        taus = tuple(Transposition(*p) for p in pairs)
        return cls(len(taus) + 1 if n is None else n, taus)

    @cached_property
    def a(self) -> tuple[int, ...]:
        return tuple(t.a for t in self.taus)

    @cached_property
    def b(self) -> tuple[int, ...]:
        return tuple(t.b for t in self.taus)

    def pairs(self) -> list[list[int]]:
        return [[t.a, t.b] for t in self.taus]

    def __len__(self):
        return len(self.taus)

    def __iter__(self) -> Iterator[Transposition]:
        return iter(self.taus)

    def __getitem__(self, i):
        return self.taus[i]

    def __repr__(self):
        return f"Factorisation(n={self.n}, ({', '.join(map(repr, self.taus))}))"


def compose(f: Factorisation) -> list[int]:
    """Images of ``t_{n-1} o ... o t_1`` as a list indexed by ``1..n`` (slot 0 unused).

    Built right to left: ``p <- p o t_k`` only swaps two entries of ``p``.
    """
    p = list(range(f.n + 1))
    for t in reversed(f.taus):
        p[t.a], p[t.b] = p[t.b], p[t.a]
    return p


def is_cycle_factorisation(f: Factorisation) -> bool:
    """True iff the product of ``f`` (first factor applied first) is ``i -> i+1 mod n``."""
    if f.n < 2:
        return False
    p = compose(f)
    n = f.n
    return all(p[i] == i % n + 1 for i in range(1, n + 1))


def monotone_class(f: Factorisation) -> str:
    """Classify the sequence of smaller endpoints by weak monotonicity."""
    a = f.a
    dec = all(x >= y for x, y in zip(a, a[1:]))
    inc = all(x <= y for x, y in zip(a, a[1:]))
    if dec and inc:
        return BOTH
    if dec:
        return DECREASING
    if inc:
        return INCREASING
    return NEITHER


def is_decreasing(f: Factorisation) -> bool:
    return monotone_class(f) in (DECREASING, BOTH)


def is_increasing(f: Factorisation) -> bool:
    return monotone_class(f) in (INCREASING, BOTH)


def _require_decreasing(f: Factorisation):
    if not is_decreasing(f):
        raise ValueError("expected a decreasing factorisation")


def to_parking_word(f: Factorisation) -> tuple[int, ...]:
    """``(a_{n-1}, ..., a_1)``: an increasing parking function when ``f`` is decreasing."""
    _require_decreasing(f)
    return f.a[::-1]


def to_231_word(f: Factorisation) -> tuple[int, ...]:
    """``(b_{n-1}, ..., b_1)``: a 231-avoiding arrangement of ``{2..n}`` when ``f`` is decreasing."""
    _require_decreasing(f)
    return f.b[::-1]


def is_231_avoiding(w: Sequence[int]) -> bool:
    """No ``i < j < k`` with ``w[k] < w[i] < w[j]``.

    Uses stack sorting: a word is stack-sortable iff it avoids 231.
    """
    if len(set(w)) != len(w):
        raise ValueError("231-avoidance is defined for words with distinct entries")
    stack: list[int] = []
    out: list[int] = []
    for x in w:
        while stack and stack[-1] < x:
            out.append(stack.pop())
        stack.append(x)
    out.extend(reversed(stack))
    return all(x < y for x, y in zip(out, out[1:]))


def is_increasing_parking_function(w: Sequence[int]) -> bool:
    """Weakly increasing with ``w_i <= i`` (1-based)."""
    return all(x <= y for x, y in zip(w, w[1:])) and all(1 <= x <= i for i, x in enumerate(w, 1))


# -- brute-force oracle -------------------------------------------------------

def _cycle_ids(p: list[int], n: int) -> list[int]:
    ids = [0] * (n + 1)
    seen = [False] * (n + 1)
    c = 0
    for start in range(1, n + 1):
        if seen[start]:
            continue
        c += 1
        x = start
        while not seen[x]:
            seen[x] = True
            ids[x] = c
            x = p[x]
    return ids


def _cycle_min(q: list[int], x: int) -> int:
    m, y = x, q[x]
    while y != x:
        m = min(m, y)
        y = q[y]
    return m


def _geodesic_dfs(n: int, allowed, feasible=None):
    """Depth-first search over transposition sequences whose partial products
    stay on a geodesic from the identity to the long cycle.

    With ``P = t_k o ... o t_1`` and ``Q = c o P^-1``, appending ``(a b)``
    keeps ``length(P) + length(Q) = n - 1`` iff ``a, b`` lie in different
    cycles of ``P`` and in the same cycle of ``Q``. Every surviving prefix
    extends to a minimal factorisation, so the search never dead-ends except
    through ``allowed``; ``feasible(q, last_a)`` may cut such branches early.
    """
    cands = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    cyc = [0] + [i % n + 1 for i in range(1, n + 1)]
    out: list[Factorisation] = []
    prefix: list[tuple[int, int]] = []

    def rec(p: list[int], pinv: list[int]):
        if len(prefix) == n - 1:
            out.append(Factorisation.from_pairs(prefix, n))
            return
        q = [0] + [cyc[pinv[x]] for x in range(1, n + 1)]
        if feasible is not None and prefix and not feasible(q, prefix[-1][0]):
            return
        pid, qid = _cycle_ids(p, n), _cycle_ids(q, n)
        for a, b in cands:
            if pid[a] == pid[b] or qid[a] != qid[b]:
                continue
            if not allowed(prefix, a):
                continue
            # new P = (a b) o P: swap the values a and b in p
            p2 = p[:]
            ia, ib = pinv[a], pinv[b]
            p2[ia], p2[ib] = b, a
            pinv2 = pinv[:]
            pinv2[a], pinv2[b] = ib, ia
            prefix.append((a, b))
            rec(p2, pinv2)
            prefix.pop()

    ident = list(range(n + 1))
    rec(ident, ident[:])
    return out


def enumerate_minimal_factorisations(n: int) -> list[Factorisation]:
    """All minimal factorisations of ``(1 ... n)``, lexicographic in the pairs.

    Exhaustive search; intended as an oracle for ``2 <= n <= 7``.
    """
    if not 2 <= n <= MAX_ENUMERATION_N:
        raise ValueError(f"enumeration supports 2 <= n <= {MAX_ENUMERATION_N}, got {n}")
    return _geodesic_dfs(n, lambda prefix, a: True)


def enumerate_monotone_factorisations(n: int, kind: str) -> list[Factorisation]:
    """Brute-force enumeration of the decreasing or increasing factorisations.

    Same search as :func:`enumerate_minimal_factorisations` with the
    monotonicity constraint applied while extending prefixes, which keeps it
    cheap enough for ``n <= 12``. Does not use any tree bijection.
    """
    if not 2 <= n <= MAX_MONOTONE_ENUMERATION_N:
        raise ValueError(f"monotone enumeration supports 2 <= n <= {MAX_MONOTONE_ENUMERATION_N}")
    # A geodesic factorisation of the remainder Q only uses transpositions
    # inside cycles of Q, which bounds the smaller endpoints still available.
    if kind == DECREASING:
        def feasible(q, last):
            return all(_cycle_min(q, x) <= last for x in range(last + 1, n + 1) if q[x] != x)
        return _geodesic_dfs(n, lambda prefix, a: not prefix or prefix[-1][0] >= a, feasible)
    if kind == INCREASING:
        def feasible(q, last):
            return all(q[x] == x for x in range(1, last))
        return _geodesic_dfs(n, lambda prefix, a: not prefix or prefix[-1][0] <= a, feasible)
    raise ValueError(f"kind must be {DECREASING!r} or {INCREASING!r}, got {kind!r}")
