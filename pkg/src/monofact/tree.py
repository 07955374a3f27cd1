"""
Plane trees encoded by their children counts in lexicographic (depth-first)
order, the Łukasiewicz path, exhaustive enumeration and an exact uniform
sampler based on the cycle lemma.

Vertices are referred to by their 0-based position in lexicographic order;
vertex ``0`` is the root.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "PlaneTree", "LukaPath", "lukasiewicz_path", "tree_from_path", "enumerate_plane_trees",
    "iter_plane_trees", "catalan", "make_rng", "sample_uniform_plane_tree",
    "sample_children_counts", "vertex_heights", "count_non_leaves", "MAX_TREE_ENUMERATION_N",
]

MAX_TREE_ENUMERATION_N = 12


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


@dataclass(frozen=True)
class PlaneTree:
    """Rooted plane tree given by ``children_counts[i]`` for the ``i``-th vertex
    in depth-first order."""
    children_counts: tuple[int, ...]

    def __post_init__(self):
        cc = tuple(int(c) for c in self.children_counts)
        if not cc:
            raise ValueError("a plane tree has at least one vertex")
        s = 0
        for i, c in enumerate(cc):
            if c < 0:
                raise ValueError(f"negative children count at vertex {i}")
            s += c - 1
            if s < 0 and i != len(cc) - 1:
                raise ValueError(f"children counts close the tree early at vertex {i}")
        if s != -1:
            raise ValueError(f"children counts sum to {sum(cc)}, expected {len(cc) - 1}")
        object.__setattr__(self, "children_counts", cc)

    @classmethod
    def from_parents(cls, parents: Sequence[int]) -> "PlaneTree":
        """Inverse of :attr:`parents`; the array must list vertices in depth-first order."""
        n = len(parents)
        counts = [0] * n
        for v, p in enumerate(parents):
            if v == 0:
                if p != -1:
                    raise ValueError("the root must have parent -1")
                continue
            if not 0 <= p < v:
                raise ValueError(f"vertex {v} has parent {p}, not an earlier vertex")
            counts[p] += 1
        t = cls(tuple(counts))
        if tuple(t.parents) != tuple(parents):
            raise ValueError("parent array is not in depth-first order")
        return t

    @property
    def n(self) -> int:
        return len(self.children_counts)

    @cached_property
    def parents(self) -> tuple[int, ...]:
        """Parent of each vertex (``-1`` for the root)."""
        par = [-1] * self.n
        stack: list[list[int]] = []  # [vertex, children still to visit]
        for v, c in enumerate(self.children_counts):
            if stack:
                top = stack[-1]
                par[v] = top[0]
                top[1] -= 1
                if top[1] == 0:
                    stack.pop()
            if c:
                stack.append([v, c])
        return tuple(par)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        ch: list[list[int]] = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parents):
            if p >= 0:
                ch[p].append(v)
        return tuple(map(tuple, ch))

    @cached_property
    def heights(self) -> tuple[int, ...]:
        h = [0] * self.n
        for v, p in enumerate(self.parents):
            if p >= 0:
                h[v] = h[p] + 1
        return tuple(h)

    @cached_property
    def subtree_sizes(self) -> tuple[int, ...]:
        size = [1] * self.n
        par = self.parents
        for v in range(self.n - 1, 0, -1):
            size[par[v]] += size[v]
        return tuple(size)

    def __repr__(self):
        return f"PlaneTree({list(self.children_counts)})"


@dataclass(frozen=True)
class LukaPath:
    values: tuple[int, ...]

    def __post_init__(self):
        v = tuple(int(x) for x in self.values)
        if len(v) < 2 or v[0] != 0 or v[-1] != -1:
            raise ValueError("a Łukasiewicz path starts at 0 and ends at -1")
        if any(x < 0 for x in v[:-1]):
            raise ValueError("a Łukasiewicz path stays non-negative before its last step")
        if any(y - x < -1 for x, y in zip(v, v[1:])):
            raise ValueError("Łukasiewicz steps are >= -1")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, k):
        return self.values[k]

    def __len__(self):
        return len(self.values)


def lukasiewicz_path(t: PlaneTree) -> LukaPath:
    """``S_k = (c_1 + ... + c_k) - k`` for ``k = 0..n``."""
    s = [0]
    for c in t.children_counts:
        s.append(s[-1] + c - 1)
    return LukaPath(tuple(s))


def tree_from_path(path: LukaPath) -> PlaneTree:
    v = path.values
    return PlaneTree(tuple(y - x + 1 for x, y in zip(v, v[1:])))


def iter_plane_trees(n: int) -> Iterator[PlaneTree]:
    """Plane trees with ``n`` vertices, lexicographic in ``children_counts``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    counts = [0] * n

    # open = S_{i} + 1: number of edges announced but not yet consumed
    def rec(i: int, open_: int):
        if i == n - 1:
            if open_ == 1:
                counts[i] = 0
                yield PlaneTree(tuple(counts))
            return
        remaining = n - 1 - i  # vertices after i
        # after vertex i we need open_ - 1 + c >= 1 and enough vertices to close
        for c in range(0, remaining + 1):
            new_open = open_ - 1 + c
            if new_open < 1 or new_open > remaining:
                continue
            counts[i] = c
            yield from rec(i + 1, new_open)

    yield from rec(0, 1)


def enumerate_plane_trees(n: int) -> list[PlaneTree]:
    if not 1 <= n <= MAX_TREE_ENUMERATION_N:
        raise ValueError(f"enumeration supports 1 <= n <= {MAX_TREE_ENUMERATION_N}, got {n}")
    return list(iter_plane_trees(n))


def vertex_heights(t: PlaneTree) -> tuple[int, ...]:
    return t.heights


def count_non_leaves(t: PlaneTree) -> int:
    return sum(1 for c in t.children_counts if c)


# -- sampling -----------------------------------------------------------------

def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """PCG64 generator keyed by ``(seed, *stream)`` through ``SeedSequence``.

    Samplers in this package only consume ``random_raw`` output, so sampled
    objects depend on the PCG64 bit stream alone, which NumPy keeps stable
    across releases.
    """
    if seed < 0 or any(s < 0 for s in stream):
        raise ValueError("seeds must be non-negative integers")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), *map(int, stream)])))


def sample_children_counts(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` independent uniform plane trees with ``n`` vertices, as rows of
    children counts.

    A uniform word with ``n - 1`` up-steps and ``n`` down-steps is drawn by
    ranking i.i.d. 64-bit keys; by the cycle lemma exactly one of its ``2n - 1``
    rotations keeps all proper prefix sums non-negative (start right after the
    first minimum of the prefix sums). The children count of the ``k``-th
    vertex is the number of up-steps before the ``k``-th down-step. Key ties,
    which occur with probability below ``n^2 / 2^64``, are broken by position.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return np.zeros((size, 1), dtype=np.int64)
    L = 2 * n - 1
    keys = rng.bit_generator.random_raw(size=(size, L))
    order = np.argsort(keys, axis=1, kind="stable")
    up = np.zeros((size, L), dtype=bool)
    np.put_along_axis(up, order[:, : n - 1], True, axis=1)
    steps = np.where(up, 1, -1)
    start = (np.argmin(np.cumsum(steps, axis=1), axis=1) + 1) % L
    idx = (start[:, None] + np.arange(L)[None, :]) % L
    word = np.take_along_axis(up, idx, axis=1)
    # the rotated word ends with a down-step; count ups between consecutive downs
    ups_before = np.cumsum(word, axis=1)
    down_rows, down_cols = np.nonzero(~word)
    ups_at_down = ups_before[down_rows, down_cols].reshape(size, n)
    return np.diff(ups_at_down, axis=1, prepend=0).astype(np.int64)


def sample_uniform_plane_tree(n: int, seed: int | np.random.Generator) -> PlaneTree:
    """Exactly uniform plane tree with ``n`` vertices; deterministic per seed."""
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    return PlaneTree(tuple(sample_children_counts(n, 1, rng)[0].tolist()))
