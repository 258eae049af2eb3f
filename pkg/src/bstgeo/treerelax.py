"""Monotone trees on a permutation point set and their relaxation.

A monotone tree is rooted at the first-accessed point and every edge runs
upward in time (the parent has the smaller y).  The treap (keys by x, heap
priorities by y) and the time-ordered path are the two extremes; an
edge-flip reparents the upper of two x-adjacent siblings under the lower
one.  Total edge height strictly drops by h(r, a) per flip, which bounds
every relaxation's length; total width moves by w(r, a), gaining when the
old parent sits x-between the siblings and losing otherwise.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional

from .geometry import PermutationPointSet, Point


class EdgeFlipError(ValueError):
    pass


@dataclass(frozen=True)
class EdgeFlip:
    """Reparent b (the upper sibling) under a (the lower one); r is the
    shared parent both hung from, recorded for bookkeeping."""

    a: Point
    b: Point
    r: Point


@dataclass(frozen=True)
class MonotoneTree:
    base: PermutationPointSet
    parent: tuple[tuple[Point, Point], ...]  # (child, parent), sorted

    @classmethod
    def from_parent_map(cls, base: PermutationPointSet, parent: dict) -> "MonotoneTree":
        return cls(base, tuple(sorted(parent.items())))

    @cached_property
    def parent_map(self) -> dict:
        return dict(self.parent)

    @cached_property
    def root(self) -> Point:
        return self.base.point_at_row(1)

    @cached_property
    def children(self) -> dict:
        out: dict[Point, list[Point]] = {p: [] for p in self.base.points}
        for child, par in self.parent:
            out[par].append(child)
        for lst in out.values():
            lst.sort()  # by x
        return out

    def validate(self) -> None:
        pts = self.base.points
        pmap = self.parent_map
        if set(pmap) != pts - {self.root}:
            raise ValueError("parent map must cover every non-root point exactly once")
        for child, par in pmap.items():
            if par not in pts:
                raise ValueError(f"parent {par} is not a point of the set")
            if not par.y < child.y:
                raise ValueError(f"edge {par}->{child} points downward in time")
        seen = set()
        for p in pts:
            hops = 0
            q = p
            while q != self.root:
                q = pmap[q]
                hops += 1
                if hops > len(pts):
                    raise ValueError("parent map contains a cycle")
        _ = seen

    def depth(self, p: Point) -> int:
        d = 0
        pmap = self.parent_map
        while p != self.root:
            p = pmap[p]
            d += 1
        return d

    def subtree_size(self, p: Point) -> int:
        kids = self.children
        total = 0
        stack = [p]
        while stack:
            q = stack.pop()
            total += 1
            stack.extend(kids[q])
        return total

    def is_path(self) -> bool:
        return all(len(kids) <= 1 for kids in self.children.values())


def build_treap(X: PermutationPointSet) -> MonotoneTree:
    """Unique tree with the search property on x and the heap property on y:
    the earliest point roots its x-interval, recursively."""
    pts = sorted(X.points)  # by x
    parent: dict[Point, Point] = {}

    def build(lo: int, hi: int) -> Optional[Point]:
        if lo > hi:
            return None
        root_idx = min(range(lo, hi + 1), key=lambda i: pts[i].y)
        root = pts[root_idx]
        for side in (build(lo, root_idx - 1), build(root_idx + 1, hi)):
            if side is not None:
                parent[side] = root
        return root

    build(0, len(pts) - 1)
    tree = MonotoneTree.from_parent_map(X, parent)
    tree.validate()
    return tree


def build_path(X: PermutationPointSet) -> MonotoneTree:
    parent = {
        X.point_at_row(i + 1): X.point_at_row(i) for i in range(1, X.n)
    }
    return MonotoneTree.from_parent_map(X, parent)


def valid_edge_flips(T: MonotoneTree) -> list[EdgeFlip]:
    """One flip per x-adjacent child pair of every branching node: the lower
    sibling adopts the upper one."""
    out = []
    for r, kids in sorted(T.children.items()):
        for c1, c2 in zip(kids, kids[1:]):
            a, b = (c1, c2) if c1.y < c2.y else (c2, c1)
            out.append(EdgeFlip(a, b, r))
    return out


def apply_edge_flip(T: MonotoneTree, f: EdgeFlip) -> MonotoneTree:
    pmap = T.parent_map
    if pmap.get(f.a) != f.r or pmap.get(f.b) != f.r:
        raise EdgeFlipError(f"{f.a} and {f.b} are not both children of {f.r}")
    kids = T.children[f.r]
    ia, ib = kids.index(f.a), kids.index(f.b)
    if abs(ia - ib) != 1:
        raise EdgeFlipError(f"{f.a} and {f.b} are not x-adjacent siblings")
    if not f.a.y < f.b.y:
        raise EdgeFlipError("the reparented sibling must be the upper one")
    new_parent = dict(pmap)
    new_parent[f.b] = f.a
    return MonotoneTree.from_parent_map(T.base, new_parent)


@dataclass(frozen=True)
class PotentialReport:
    h_total: int  # sum of |dy| over edges
    w_total: int  # sum of |dx| over edges
    depth_sum: int
    h_log: float  # sum of log2 edge heights
    w_log: float  # sum of log2 edge widths


def potentials(T: MonotoneTree) -> PotentialReport:
    h = w = 0
    h_log = w_log = 0.0
    for child, par in T.parent:
        h += abs(child.y - par.y)
        w += abs(child.x - par.x)
        h_log += math.log2(abs(child.y - par.y))
        w_log += math.log2(abs(child.x - par.x))
    depth_sum = 0
    kids = T.children
    stack = [(T.root, 0)]
    while stack:
        p, d = stack.pop()
        depth_sum += d
        stack.extend((k, d + 1) for k in kids[p])
    return PotentialReport(h, w, depth_sum, h_log, w_log)


POLICIES = ("max_height_drop", "max_width_gain", "max_depth_gain", "random")


def _flip_sort_key(f: EdgeFlip) -> tuple:
    return (f.r.x, f.a.x, f.b.x)


def run_heuristic(
    X: PermutationPointSet, policy: str = "max_height_drop", seed: int = 0
) -> list[EdgeFlip]:
    """Relax the treap to the path, one policy-optimal flip at a time;
    termination is guaranteed by the per-flip height drop of h(r, a).

    max_height_drop chases that drop, max_width_gain the span w(r, a),
    max_depth_gain the subtree size of b.  Ties break lexicographically on
    (r.x, a.x, b.x) so runs are reproducible; the random policy draws
    uniformly from the valid flips with a seeded generator.
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    rng = random.Random(seed)
    T = build_treap(X)
    flips: list[EdgeFlip] = []
    while True:
        candidates = valid_edge_flips(T)
        if not candidates:
            break
        if policy == "random":
            chosen = rng.choice(sorted(candidates, key=_flip_sort_key))
        else:
            if policy == "max_height_drop":
                score = lambda f: f.a.y - f.r.y
            elif policy == "max_width_gain":
                score = lambda f: abs(f.a.x - f.r.x)
            else:
                score = lambda f: T.subtree_size(f.b)
            best = max(score(f) for f in candidates)
            chosen = min(
                (f for f in candidates if score(f) == best), key=_flip_sort_key
            )
        T = apply_edge_flip(T, chosen)
        flips.append(chosen)
    if not T.is_path():
        raise AssertionError("relaxation stopped before reaching the path")
    return flips
