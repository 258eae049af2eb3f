"""Satisfaction predicates, the greedy sweep, and exhaustive optimum oracles.

A point set is satisfied when every non-collinear pair's closed rectangle
contains a third point of the set.  The signed variants restrict the
requirement to pairs of one diagonal orientation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Optional

from .geometry import (
    PermutationPointSet,
    Point,
    manhattan_path_exists,
    orientation,
    rect_is_empty,
)


class Sign(Enum):
    PLUS = "plus"
    MINUS = "minus"
    BOTH = "both"

    def covers(self, pair_orientation: Optional[str]) -> bool:
        """Does this sign require the given pair orientation to be satisfied?"""
        if pair_orientation is None:
            return False
        return self is Sign.BOTH or self.value == pair_orientation


@dataclass(frozen=True)
class PointSuperset:
    """A candidate superset Y = X plus repair points inside [n]x[n]."""

    base: PermutationPointSet
    extra: frozenset[Point]

    def __post_init__(self) -> None:
        n = self.base.n
        for p in self.extra:
            if not (1 <= p.x <= n and 1 <= p.y <= n):
                raise ValueError(f"extra point {p} outside [{n}]x[{n}]")

    @property
    def n(self) -> int:
        return self.base.n

    @cached_property
    def points(self) -> frozenset[Point]:
        return self.base.points | self.extra

    @property
    def cost(self) -> int:
        return len(self.points)


def is_satisfied(Y: Iterable[Point], sign: Sign = Sign.BOTH) -> bool:
    """Check satisfaction over all pairs of the given orientation(s)."""
    pts = list(Y)
    ptset = frozenset(pts)
    for a, b in itertools.combinations(pts, 2):
        if not sign.covers(orientation(a, b)):
            continue
        if rect_is_empty(ptset, a, b):
            return False
    return True


def unsatisfied_pairs(Y: Iterable[Point], sign: Sign = Sign.BOTH) -> list[tuple[Point, Point]]:
    pts = list(Y)
    ptset = frozenset(pts)
    bad = []
    for a, b in itertools.combinations(pts, 2):
        if sign.covers(orientation(a, b)) and rect_is_empty(ptset, a, b):
            bad.append((a, b))
    return bad


def greedy_sweep(X: PermutationPointSet, sign: Sign = Sign.BOTH) -> PointSuperset:
    """Bottom-up row sweep: when row i arrives, repair every point of the set
    built so far whose rectangle with the new point (x_i, i) is empty, by
    adding the projection (p.x, i).

    A point p left of x_i qualifies exactly when p is the unique highest
    point over the column range [p.x, x_i], so one pass over column maxima
    per side suffices (and symmetrically to the right).  Signed sweeps only
    repair the matching side.
    """
    col_top: dict[int, int] = {}
    extra: set[Point] = set()
    for i, xi in enumerate(X.seq, start=1):
        additions = []
        if sign in (Sign.PLUS, Sign.BOTH):
            running = col_top.get(xi, 0)
            for x in range(xi - 1, 0, -1):
                top = col_top.get(x)
                if top is not None and top > running:
                    additions.append(Point(x, i))
                    running = top
        if sign in (Sign.MINUS, Sign.BOTH):
            running = col_top.get(xi, 0)
            for x in range(xi + 1, X.n + 1):
                top = col_top.get(x)
                if top is not None and top > running:
                    additions.append(Point(x, i))
                    running = top
        col_top[xi] = i
        for p in additions:
            col_top[p.x] = i
        extra.update(additions)
    return PointSuperset(X, frozenset(extra - X.points))


def greedy_sweep_reference(X: PermutationPointSet, sign: Sign = Sign.BOTH) -> PointSuperset:
    """Literal restatement of the sweep rule, used as an oracle in tests:
    at row i add (p.x, i) for every already-placed p whose rectangle with
    (x_i, i) is empty in Y_<i plus the new point (and whose pair has the
    requested orientation)."""
    built: set[Point] = set()
    for i, xi in enumerate(X.seq, start=1):
        new = Point(xi, i)
        probe = built | {new}
        additions = set()
        for p in built:
            if not sign.covers(orientation(p, new)):
                continue
            if rect_is_empty(probe, p, new):
                additions.add(Point(p.x, i))
        built.add(new)
        built |= additions
    return PointSuperset(X, frozenset(built - X.points))


def signed_greedy(X: PermutationPointSet) -> PointSuperset:
    """Union of the plus- and minus-sweep outputs."""
    plus = greedy_sweep(X, Sign.PLUS)
    minus = greedy_sweep(X, Sign.MINUS)
    return PointSuperset(X, plus.extra | minus.extra)


PREDICATES = ("satisfaction", "manhattan-network")


def _passes(Y: PointSuperset, sign: Sign, predicate: str) -> bool:
    if predicate == "satisfaction":
        return is_satisfied(Y.points, sign)
    # manhattan-network: connectivity is only demanded between input pairs
    # (of the requested orientation), through the whole of Y.
    pts = Y.points
    for a, b in itertools.combinations(sorted(Y.base.points), 2):
        o = orientation(a, b)
        if o is not None and not sign.covers(o):
            continue
        if not manhattan_path_exists(pts, a, b):
            return False
    return True


@dataclass(frozen=True)
class OptimumReport:
    optimum: int
    witness: PointSuperset
    enumerated: int


def brute_force_opt(
    X: PermutationPointSet,
    sign: Sign = Sign.BOTH,
    predicate: str = "satisfaction",
    limit: int = 5,
) -> OptimumReport:
    """Certified optimum by exhausting candidate extra-point sets in
    increasing cardinality; the first passing set is a minimum witness."""
    if predicate not in PREDICATES:
        raise ValueError(f"unknown predicate {predicate!r}")
    if X.n > limit:
        raise ValueError(
            f"n={X.n} exceeds the brute-force limit {limit}; raise the limit explicitly"
        )
    free = sorted(
        Point(x, y)
        for x in range(1, X.n + 1)
        for y in range(1, X.n + 1)
        if Point(x, y) not in X.points
    )
    enumerated = 0
    for k in range(len(free) + 1):
        for combo in itertools.combinations(free, k):
            enumerated += 1
            candidate = PointSuperset(X, frozenset(combo))
            if _passes(candidate, sign, predicate):
                return OptimumReport(candidate.cost, candidate, enumerated)
    raise AssertionError("the full grid always passes; unreachable")
