"""Breadth-first enumeration of the admissible-mutation tree.

The root is the standard helix with foundation (O(-1), O, O(1), O(2)).  The
root has two children (the moves producing T(-1) and T^dual(2)); a vertex
created by a right mutation has children R0, L0, R1 and one created by a left
mutation has children L1, R2, L2.  Children are listed by increasing slope of
the bundle they introduce.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .epsilon import ThreeAdicRational
from .helix import (
    LEFT_MOVES,
    RIGHT_MOVES,
    Foundation,
    MutationMove,
    apply_move,
    standard_foundation,
)
from .kgroup import ChernCharacter, slope

ROOT_MOVES = (MutationMove.R1, MutationMove.L1)

# numerator offsets of the child index, 3P + k, for a parent with numerator P
_CHILD_OFFSET = {
    MutationMove.R0: -2,
    MutationMove.L0: -1,
    MutationMove.R1: 1,
    MutationMove.L1: -1,
    MutationMove.R2: 1,
    MutationMove.L2: 2,
}


@dataclass
class GammaVertex:
    foundation: Foundation
    move: Optional[MutationMove] = None
    index: Optional[ThreeAdicRational] = None
    depth: int = 0
    children: list["GammaVertex"] = field(default_factory=list)

    @property
    def is_root(self) -> bool:
        return self.move is None

    @property
    def mark(self) -> Optional[int]:
        return None if self.move is None else self.move.new_position

    @property
    def new_bundle(self) -> Optional[ChernCharacter]:
        return None if self.move is None else self.foundation[self.mark]

    @property
    def new_slope(self) -> Optional[Fraction]:
        b = self.new_bundle
        return None if b is None else slope(b)

    def allowed_moves(self) -> tuple[MutationMove, ...]:
        if self.move is None:
            return ROOT_MOVES
        return RIGHT_MOVES if self.move.is_right else LEFT_MOVES

    def child_index(self, m: MutationMove) -> ThreeAdicRational:
        if self.index is None:
            return ThreeAdicRational(1 if m is MutationMove.R1 else 2, 1)
        return ThreeAdicRational(3 * self.index.p + _CHILD_OFFSET[m], self.index.q + 1)

    def walk(self):
        """Vertices of the subtree, breadth first."""
        queue = deque([self])
        while queue:
            v = queue.popleft()
            yield v
            queue.extend(v.children)


def children(v: GammaVertex) -> list[GammaVertex]:
    out = [
        GammaVertex(apply_move(v.foundation, m), m, v.child_index(m), v.depth + 1)
        for m in v.allowed_moves()
    ]
    return sorted(out, key=lambda c: c.new_slope)


@dataclass
class GammaTree:
    root: GammaVertex
    depth: int

    def vertices(self) -> list[GammaVertex]:
        return list(self.root.walk())

    def edges(self) -> list[tuple[GammaVertex, GammaVertex]]:
        return [(v, c) for v in self.root.walk() for c in v.children]

    def __len__(self) -> int:
        return sum(1 for _ in self.root.walk())


def build_tree(depth: int) -> GammaTree:
    if depth < 0:
        raise ValueError("depth must be non-negative")
    root = GammaVertex(standard_foundation())
    frontier = [root]
    for _ in range(depth):
        nxt = []
        for v in frontier:
            v.children = children(v)
            nxt.extend(v.children)
        frontier = nxt
    return GammaTree(root, depth)


@dataclass
class TreeReport:
    checks: dict[str, bool]
    failures: dict[str, list[str]]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _subtree_slopes(v: GammaVertex) -> list[Fraction]:
    return [w.new_slope for w in v.walk() if w.new_slope is not None]


def verify_tree(tree: GammaTree) -> TreeReport:
    """Tree, degree and slope checks; never raises on a failed check."""
    failures: dict[str, list[str]] = {
        "distinct_helices": [],
        "degrees": [],
        "sibling_order": [],
        "slopes_in_unit_interval": [],
        "nested_intervals": [],
    }
    seen: dict[tuple, GammaVertex] = {}
    for v in tree.root.walk():
        key = v.foundation.helix_key()
        if key in seen:
            failures["distinct_helices"].append(f"{v.index} repeats {seen[key].index}")
        else:
            seen[key] = v

        expected = 0 if v.depth >= tree.depth else (2 if v.is_root else 3)
        if len(v.children) != expected:
            failures["degrees"].append(f"{v.index}: {len(v.children)} children, expected {expected}")

        kids = [c.new_slope for c in v.children]
        if any(a >= b for a, b in zip(kids, kids[1:])):
            failures["sibling_order"].append(f"{v.index}: {[str(s) for s in kids]}")

        if not v.is_root and not 0 < v.new_slope < 1:
            failures["slopes_in_unit_interval"].append(f"{v.index}: slope {v.new_slope}")

        # descendants stay between the neighbours of the vertex's new bundle,
        # and sibling subtrees occupy disjoint consecutive slope ranges
        if not v.is_root:
            lo = slope(v.foundation.helix_element(v.mark - 1))
            hi = slope(v.foundation.helix_element(v.mark + 1))
            for s in _subtree_slopes(v):
                if not lo < s < hi:
                    failures["nested_intervals"].append(f"{v.index}: descendant slope {s} outside ({lo}, {hi})")
        ranges = [_subtree_slopes(c) for c in v.children]
        for a, b in zip(ranges, ranges[1:]):
            if max(a) >= min(b):
                failures["nested_intervals"].append(f"{v.index}: sibling subtrees overlap")
    checks = {name: not errs for name, errs in failures.items()}
    return TreeReport(checks, failures)


def _vertex_json(v: GammaVertex) -> dict:
    return {
        "index": None if v.index is None else str(v.index),
        "slope": None if v.is_root else str(v.new_slope),
        "ch": None if v.is_root else v.new_bundle.to_json(),
        "move": None if v.is_root else str(v.move),
        "foundation": v.foundation.to_json(),
        "children": [_vertex_json(c) for c in v.children],
    }


def to_json(tree: GammaTree) -> str:
    return json.dumps({"depth": tree.depth, "root": _vertex_json(tree.root)}, indent=2)


def to_dot(tree: GammaTree) -> str:
    lines = ["digraph gamma {", "  node [shape=box];"]
    names = {}
    for n, v in enumerate(tree.root.walk()):
        names[id(v)] = f"v{n}"
        if v.is_root:
            label = "standard helix"
        else:
            label = f"mu={v.new_slope}\\neps({v.index})"
        lines.append(f'  v{n} [label="{label}"];')
    for parent, child in tree.edges():
        lines.append(f'  {names[id(parent)]} -> {names[id(child)]} [label="{child.move}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(tree: GammaTree, fmt: str = "json") -> str:
    if fmt == "json":
        return to_json(tree)
    if fmt == "dot":
        return to_dot(tree)
    raise ValueError(f"unknown export format {fmt!r}")


def from_json(text: str) -> GammaTree:
    data = json.loads(text)

    def build(d: dict, depth: int) -> GammaVertex:
        v = GammaVertex(
            Foundation.from_json(d["foundation"]),
            None if d["move"] is None else MutationMove(d["move"]),
            None if d["index"] is None else ThreeAdicRational.parse(d["index"]),
            depth,
        )
        v.children = [build(c, depth + 1) for c in d["children"]]
        return v

    return GammaTree(build(data["root"], 0), data["depth"])
