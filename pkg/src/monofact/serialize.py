"""
JSON interchange for factorisations, plane trees, labelled trees, laminations
and reports. Every document carries ``"schema": "monofact/v1"`` and a
``"type"``; rationals are written as ``[numerator, denominator]``.

Output is canonical (sorted keys, fixed separators), so equal objects give
byte-identical files.

>>> from monofact.perm import Factorisation
>>> f = Factorisation.from_pairs([(1, 2), (1, 3)])
>>> loads(dumps(f)) == f
True
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .bijection import LabeledTree
from .lamination import Chord, Lamination
from .perm import Factorisation
from .tree import PlaneTree

__all__ = ["SCHEMA", "MalformedInput", "to_obj", "from_obj", "dumps", "loads", "dump_obj"]

SCHEMA = "monofact/v1"


class MalformedInput(ValueError):
    """Raised for documents that do not follow the schema."""


def _rat(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def _unrat(x) -> Fraction:
    if (not isinstance(x, list) or len(x) != 2 or not all(type(v) is int for v in x)
            or x[1] <= 0):
        raise MalformedInput(f"expected a rational [num, den], got {x!r}")
    return Fraction(x[0], x[1])


def to_obj(x: Any, **extra) -> dict:
    if isinstance(x, Factorisation):
        d = {"type": "factorisation", "n": x.n, "pairs": x.pairs()}
    elif isinstance(x, PlaneTree):
        d = {"type": "plane_tree", "n": x.n, "children_counts": list(x.children_counts),
             "parents": list(x.parents)}
    elif isinstance(x, LabeledTree):
        d = {"type": "labeled_tree", "n": x.n, "children_counts": list(x.shape.children_counts),
             "vertex_labels": list(x.vertex_labels), "edge_labels": list(x.edge_labels)}
    elif isinstance(x, Lamination):
        d = {"type": "lamination", "chords": [[_rat(c.u), _rat(c.v)] for c in x]}
    else:
        raise TypeError(f"cannot serialise {type(x).__name__}")
    d.update(extra)
    d["schema"] = SCHEMA
    return d


def _ints(d, key):
    v = d.get(key)
    if not isinstance(v, list) or not all(type(x) is int for x in v):
        raise MalformedInput(f"field {key!r} must be a list of integers")
    return v


def from_obj(d: dict):
    """Inverse of :func:`to_obj`; raises :class:`MalformedInput` on bad documents."""
    if not isinstance(d, dict):
        raise MalformedInput("document must be a JSON object")
    if d.get("schema") != SCHEMA:
        raise MalformedInput(f"unknown schema {d.get('schema')!r}, expected {SCHEMA!r}")
    kind = d.get("type")
    try:
        if kind == "factorisation":
            pairs = d.get("pairs")
            if not isinstance(pairs, list) or not all(
                    isinstance(p, list) and len(p) == 2 and all(type(v) is int for v in p) for p in pairs):
                raise MalformedInput("field 'pairs' must be a list of [a, b] integer pairs")
            n = d.get("n")
            if type(n) is not int:
                raise MalformedInput("field 'n' must be an integer")
            return Factorisation.from_pairs(pairs, n)
        if kind == "plane_tree":
            t = PlaneTree(tuple(_ints(d, "children_counts")))
            if "parents" in d and _ints(d, "parents") != list(t.parents):
                raise MalformedInput("parents do not match children counts")
            return t
        if kind == "labeled_tree":
            t = PlaneTree(tuple(_ints(d, "children_counts")))
            return LabeledTree(t, tuple(_ints(d, "vertex_labels")), tuple(_ints(d, "edge_labels")))
        if kind == "lamination":
            chords = d.get("chords")
            if not isinstance(chords, list) or not all(isinstance(c, list) and len(c) == 2 for c in chords):
                raise MalformedInput("field 'chords' must be a list of [u, v] rational pairs")
            return Lamination(tuple(Chord(_unrat(u), _unrat(v)) for u, v in chords))
    except MalformedInput:
        raise
    except (ValueError, TypeError) as e:
        raise MalformedInput(str(e)) from e
    raise MalformedInput(f"unknown document type {kind!r}")


def dump_obj(d: dict) -> str:
    return json.dumps(d, sort_keys=True, separators=(",", ":")) + "\n"


def dumps(x: Any, **extra) -> str:
    return dump_obj(to_obj(x, **extra))


def loads(s: str):
    try:
        d = json.loads(s)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"invalid JSON: {e}") from e
    return from_obj(d)
