"""
Labelled plane trees and the correspondences between minimal factorisations
and trees: the edge/vertex-labelled tree of a factorisation, recovery of the
vertex labels from the edge labels alone (the ``Next`` exploration), and the
two explicit labelings that invert the shape map on decreasing and on
increasing factorisations.

An edge is identified by its child endpoint, so ``edge_labels[v]`` is the
label of the edge between ``v`` and its parent (``edge_labels[0] == 0``).
Label ``0`` means "unlabelled".
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .perm import (Factorisation, is_cycle_factorisation, is_decreasing,
                   is_increasing)
from .tree import PlaneTree

__all__ = [
    "LabeledTree", "t1_forward", "t1_shape", "strip_vertex_labels", "next_vertex", "label_vertices",
    "factorisation_from_edge_labels", "factorisation_of_labeled_tree", "decreasing_labels",
    "decreasing_factorisation_of_tree", "tree_of_decreasing_factorisation",
    "increasing_labels", "increasing_factorisation_of_tree", "tree_of_increasing_factorisation",
    "vertex_types",
]


@dataclass(frozen=True)
class LabeledTree:
    shape: PlaneTree
    vertex_labels: tuple[int, ...]
    edge_labels: tuple[int, ...]

    def __post_init__(self):
        n = self.shape.n
        vl = tuple(int(x) for x in self.vertex_labels)
        el = tuple(int(x) for x in self.edge_labels)
        if len(vl) != n or len(el) != n:
            raise ValueError("label arrays must have one entry per vertex")
        if el[0] != 0:
            raise ValueError("the root has no parent edge; edge_labels[0] must be 0")
        _check_injective(vl, n, "vertex")
        _check_injective(el, n - 1, "edge")
        if vl[0] not in (0, 1):
            raise ValueError("the root label must be 1")
        if n > 2:
            # labelled children of each vertex, in plane order, must carry increasing labels
            par = np.asarray(self.shape.parents[1:])
            lab = np.asarray(el[1:])
            keep = lab > 0
            par, lab = par[keep], lab[keep]
            order = np.argsort(par, kind="stable")
            par, lab = par[order], lab[order]
            bad = np.nonzero((par[1:] == par[:-1]) & (lab[1:] <= lab[:-1]))[0]
            if len(bad):
                raise ValueError(f"edge labels at vertex {par[bad[0]]} are not compatible with the plane order")
        object.__setattr__(self, "vertex_labels", vl)
        object.__setattr__(self, "edge_labels", el)

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def fully_labeled(self) -> bool:
        return all(self.vertex_labels) and all(self.edge_labels[1:])

    def vertex_with_label(self, label: int) -> int:
        try:
            return self.vertex_labels.index(label)
        except ValueError:
            raise ValueError(f"no vertex carries label {label}") from None


def _check_injective(labels, hi, what):
    arr = np.asarray(labels, dtype=np.int64)
    arr = arr[arr != 0]
    if len(arr) == 0:
        return
    if arr.min() < 1 or arr.max() > hi:
        x = arr[(arr < 1) | (arr > hi)][0]
        raise ValueError(f"{what} label {x} outside [1, {hi}]")
    cnt = np.bincount(arr)
    if cnt.max() > 1:
        raise ValueError(f"{what} label {int(cnt.argmax())} used twice")


def strip_vertex_labels(t: LabeledTree) -> LabeledTree:
    return LabeledTree(t.shape, (0,) * t.n, t.edge_labels)


def _t1_walk(f: Factorisation, with_labels: bool):
    """Preorder walk of the factorisation graph from vertex 1, children in
    edge-label order. Returns children counts and, optionally, the vertex
    labels and parent-edge labels in that order."""
    n = f.n
    if n == 1:
        return [0], [1], [0]
    if not is_cycle_factorisation(f):
        raise ValueError("not a minimal factorisation of the long cycle")
    # a minimal factorisation never repeats an edge, so neighbours identify edges;
    # they are appended in label order, so each list is already sorted
    adj: list[list[int]] = [[] for _ in range(n + 1)]
    lab: list[list[int]] = [[] for _ in range(n + 1)]
    for k, (a, b) in enumerate(zip(f.a, f.b), 1):
        adj[a].append(b)
        adj[b].append(a)
        if with_labels:
            lab[a].append(k)
            lab[b].append(k)
    parent = [0] * (n + 1)
    seen = [False] * (n + 1)
    counts, vlab, elab = [], [], []
    stack = [1]
    while stack:
        x = stack.pop()
        if seen[x]:
            raise ValueError("factorisation graph is not a tree")
        seen[x] = True
        vlab.append(x)
        p = parent[x]
        kids = [y for y in adj[x] if y != p]
        counts.append(len(kids))
        for y in kids:
            parent[y] = x
        stack.extend(reversed(kids))
        if with_labels:
            elab.append(lab[x][adj[x].index(p)] if p else 0)
    if len(vlab) != n:
        raise ValueError("factorisation graph is not connected")
    return counts, vlab, elab


def t1_forward(f: Factorisation) -> LabeledTree:
    """The EV-labelled plane tree of a minimal factorisation: vertex ``i`` is
    labelled ``i``, the edge labelled ``k`` joins ``a_k`` and ``b_k``, the root
    is vertex 1 and children are ordered by edge label."""
    counts, vlab, elab = _t1_walk(f, True)
    return LabeledTree(PlaneTree(tuple(counts)), tuple(vlab), tuple(elab))


def t1_shape(f: Factorisation) -> PlaneTree:
    """Shape of :func:`t1_forward` without building the labels."""
    return PlaneTree(tuple(_t1_walk(f, False)[0]))


def factorisation_of_labeled_tree(t: LabeledTree) -> Factorisation:
    """Read ``tau_k = (label(u), label(v))`` off the edge labelled ``k``."""
    if not t.fully_labeled:
        raise ValueError("tree must carry all vertex and edge labels")
    pairs = [None] * (t.n - 1)
    par = t.shape.parents
    for v in range(1, t.n):
        pairs[t.edge_labels[v] - 1] = (t.vertex_labels[par[v]], t.vertex_labels[v])
    return Factorisation.from_pairs(pairs, t.n)


# -- recovering vertex labels from edge labels ------------------------------

class _EdgeWalker:
    """Per-vertex incident edge labels (sorted) with the opposite endpoints."""

    def __init__(self, t: LabeledTree):
        el = t.edge_labels
        if t.n > 1 and not all(el[1:]):
            raise ValueError("Next needs every edge labelled")
        par = t.shape.parents
        inc: list[list[tuple[int, int]]] = [[] for _ in range(t.n)]
        for v in range(1, t.n):
            inc[v].append((el[v], par[v]))
            inc[par[v]].append((el[v], v))
        self.labels = []
        self.ends = []
        for lst in inc:
            lst.sort()
            self.labels.append([lab for lab, _ in lst])
            self.ends.append([w for _, w in lst])
        self.steps = 0

    def next_from(self, v0: int) -> int:
        labels, ends = self.labels, self.ends
        cur = labels[v0][0]
        v = ends[v0][0]
        self.steps += 1
        while True:
            j = bisect_right(labels[v], cur)
            if j == len(labels[v]):
                return v
            cur = labels[v][j]
            v = ends[v][j]
            self.steps += 1


def next_vertex(t: LabeledTree, k: int) -> int:
    """Vertex that receives label ``k + 1`` (0-based depth-first index).

    ``k = 0`` gives the root. Otherwise start at the vertex labelled ``k``,
    take its smallest incident edge, then repeatedly the successor edge (the
    smallest label above the one just used at the current vertex) for as long
    as one exists.
    """
    if not 0 <= k <= t.n - 1:
        raise ValueError(f"k must lie in [0, {t.n - 1}]")
    if k == 0:
        return 0
    for lab in range(1, k + 1):
        if lab not in t.vertex_labels:
            raise ValueError(f"label {lab} must be placed before calling Next with k={k}")
    return _EdgeWalker(t).next_from(t.vertex_with_label(k))


def label_vertices(t: LabeledTree, counter: dict | None = None) -> LabeledTree:
    """Apply ``Next(t, 0), ..., Next(t, n-1)`` to an E-labelled tree.

    ``counter['steps']`` receives the number of edge traversals, which stays
    linear in ``n`` (each edge is walked at most twice).
    """
    n = t.n
    labels = sorted(t.edge_labels[1:])
    if labels != list(range(1, n)):
        raise ValueError("edge labels must be exactly 1..n-1")
    walker = _EdgeWalker(t)
    vl = [0] * n
    vl[0] = 1
    v = 0
    for k in range(1, n):
        v = walker.next_from(v)
        if vl[v]:
            raise ValueError("edge labels do not come from a minimal factorisation")
        vl[v] = k + 1
    if counter is not None:
        counter["steps"] = walker.steps
    return LabeledTree(t.shape, tuple(vl), t.edge_labels)


def factorisation_from_edge_labels(t: LabeledTree) -> Factorisation:
    """Inverse of the E-labelled tree map: recover vertex labels with Next and
    read the transpositions off the edges."""
    if any(t.vertex_labels):
        t = strip_vertex_labels(t)
    return factorisation_of_labeled_tree(label_vertices(t))


# -- decreasing factorisations ------------------------------------------------

def _decreasing_edge_labels(t: PlaneTree) -> list[int]:
    # children of vertex i take the labels n-E_i .. n-1-E_{i-1}, left to right,
    # where E_i = S_i + i counts the edges stemming from the first i vertices
    n = t.n
    el = [0] * n
    e = 0
    for v, kids in enumerate(t.children):
        e += len(kids)
        for j, c in enumerate(kids):
            el[c] = n - e + j
    return el


def decreasing_labels(t: PlaneTree) -> LabeledTree:
    """Vertices labelled in depth-first order, each vertex's outgoing edges
    taking the largest labels still free, increasing left to right."""
    return LabeledTree(t, tuple(range(1, t.n + 1)), tuple(_decreasing_edge_labels(t)))


def decreasing_pairs(t: PlaneTree) -> tuple[list[int], list[int]]:
    """``(a, b)`` of the decreasing factorisation of ``t`` as plain lists."""
    n = t.n
    el = _decreasing_edge_labels(t)
    a = [0] * (n - 1)
    b = [0] * (n - 1)
    par = t.parents
    for v in range(1, n):
        k = el[v] - 1
        a[k] = par[v] + 1
        b[k] = v + 1
    return a, b


def decreasing_factorisation_of_tree(t: PlaneTree) -> Factorisation:
    a, b = decreasing_pairs(t)
    return Factorisation.from_pairs(zip(a, b), t.n)


def tree_of_decreasing_factorisation(f: Factorisation) -> PlaneTree:
    if not is_decreasing(f):
        raise ValueError("expected a decreasing factorisation")
    return t1_shape(f)


# -- increasing factorisations ------------------------------------------------

def vertex_types(t: PlaneTree) -> tuple[int, ...]:
    """1 for leaves and even-height vertices, 2 otherwise."""
    return tuple(1 if c == 0 or h % 2 == 0 else 2
                 for c, h in zip(t.children_counts, t.heights))


def increasing_labels(t: PlaneTree, stage: int | None = None) -> LabeledTree:
    """Labelling of ``t`` whose edge reading is an increasing factorisation.

    Builds the partially labelled trees ``t_1, t_2, ...`` one at a time; with
    ``stage`` given, stops at ``t_stage`` (``stage = 0`` is the bare tree).
    Each step looks at the depth-first successor ``u'`` of the vertex ``v``
    labelled in the previous step and its parent ``u``:

    * ``u'`` a leaf: ``u'`` gets the smallest free vertex label, its parent
      edge the smallest free edge label if still unlabelled;
    * ``u'`` internal, ``u`` of type 2: ``u'`` gets the smallest free vertex
      label, its outgoing edges the next free edge labels and then its parent
      edge the one after;
    * ``u'`` internal, ``u`` of type 1: with ``u''`` the first child of ``u'``,
      ``u'`` gets ``nu + |sub(u')| - 1`` and ``u''`` gets ``nu``; the edges of
      ``u''`` are labelled as ``u'``'s in the previous case.
    """
    n = t.n
    vl = [0] * n
    el = [0] * n
    if stage == 0:
        return LabeledTree(t, tuple(vl), tuple(el))
    kids = t.children
    par = t.parents
    size = t.subtree_sizes
    types = vertex_types(t)
    used = [False] * (n + 2)

    vl[0] = 1
    used[1] = True
    eps = 1
    for c in kids[0]:
        el[c] = eps
        eps += 1
    nu = 2

    def label_block(w):
        nonlocal eps
        for c in kids[w]:
            el[c] = eps
            eps += 1
        el[w] = eps
        eps += 1

    cur, k = 0, 1
    while cur != n - 1 and (stage is None or k < stage):
        u1 = cur + 1
        u = par[u1]
        if not kids[u1]:
            vl[u1] = nu
            used[nu] = True
            if not el[u1]:
                el[u1] = eps
                eps += 1
            cur = u1
        elif types[u] == 2:
            vl[u1] = nu
            used[nu] = True
            label_block(u1)
            cur = u1
        else:
            u2 = u1 + 1
            far = nu + size[u1] - 1
            vl[u1] = far
            used[far] = True
            vl[u2] = nu
            used[nu] = True
            label_block(u2)
            cur = u2
        while used[nu]:
            nu += 1
        k += 1
    return LabeledTree(t, tuple(vl), tuple(el))


def increasing_factorisation_of_tree(t: PlaneTree) -> Factorisation:
    return factorisation_of_labeled_tree(increasing_labels(t))


def tree_of_increasing_factorisation(f: Factorisation) -> PlaneTree:
    if not is_increasing(f):
        raise ValueError("expected an increasing factorisation")
    return t1_shape(f)
