"""Lower bounds from independent empty rectangles, and small manhattan
network construction and verification.

An unsatisfied rectangle is an empty rectangle spanned by two input points;
a set of them is independent when no corner of one lies strictly inside
another.  Half the maximum independent count plus n lower-bounds every
manhattan network, hence every satisfied superset and every BST run.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .geometry import (
    PermutationPointSet,
    Point,
    manhattan_path_exists,
    orientation,
    rect_is_empty,
)
from .satisfied import OptimumReport, PointSuperset, Sign, brute_force_opt


@dataclass(frozen=True)
class UnsatisfiedRectangle:
    a: Point
    b: Point

    @property
    def sign(self) -> str:
        o = orientation(self.a, self.b)
        assert o is not None
        return o

    @property
    def width(self) -> int:
        return abs(self.a.x - self.b.x)

    def corners(self) -> tuple[Point, Point, Point, Point]:
        xs = (self.a.x, self.b.x)
        ys = (self.a.y, self.b.y)
        return (
            Point(min(xs), min(ys)),
            Point(min(xs), max(ys)),
            Point(max(xs), min(ys)),
            Point(max(xs), max(ys)),
        )


def unsatisfied_rectangles(
    X: PermutationPointSet, sign: Sign = Sign.BOTH
) -> list[UnsatisfiedRectangle]:
    out = []
    for a, b in itertools.combinations(sorted(X.points), 2):
        o = orientation(a, b)
        if o is None or not sign.covers(o):
            continue
        if rect_is_empty(X.points, a, b):
            out.append(UnsatisfiedRectangle(a, b))
    return out


def _strictly_inside(p: Point, r: UnsatisfiedRectangle) -> bool:
    lox, hix = min(r.a.x, r.b.x), max(r.a.x, r.b.x)
    loy, hiy = min(r.a.y, r.b.y), max(r.a.y, r.b.y)
    return lox < p.x < hix and loy < p.y < hiy


def independent(r1: UnsatisfiedRectangle, r2: UnsatisfiedRectangle) -> bool:
    """Boundary and corner contact are allowed; only strict interior
    penetration by a corner breaks independence."""
    return not any(_strictly_inside(c, r2) for c in r1.corners()) and not any(
        _strictly_inside(c, r1) for c in r2.corners()
    )


@dataclass(frozen=True)
class IndependentSet:
    rects: tuple[UnsatisfiedRectangle, ...]
    sign: Sign
    exact: bool  # True when certified maximum, False for the greedy bound

    @property
    def size(self) -> int:
        return len(self.rects)


def max_independent_rectangles(
    X: PermutationPointSet,
    sign: Sign = Sign.BOTH,
    mode: str = "exact",
    limit: int = 24,
) -> IndependentSet:
    """Maximum (or widest-first maximal, mode='greedy') independent set of
    unsatisfied rectangles."""
    rects = unsatisfied_rectangles(X, sign)
    if mode == "greedy":
        chosen: list[UnsatisfiedRectangle] = []
        for r in sorted(rects, key=lambda r: (-r.width, r.a, r.b)):
            if all(independent(r, c) for c in chosen):
                chosen.append(r)
        return IndependentSet(tuple(chosen), sign, exact=False)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    if len(rects) > limit:
        raise ValueError(
            f"{len(rects)} unsatisfied rectangles exceed the exact-mode limit {limit}"
        )
    conflicts = {
        i: {j for j in range(len(rects)) if j != i and not independent(rects[i], rects[j])}
        for i in range(len(rects))
    }
    best: list[int] = []

    def grow(chosen: list[int], candidates: list[int]) -> None:
        nonlocal best
        if len(chosen) + len(candidates) <= len(best):
            return
        if not candidates:
            if len(chosen) > len(best):
                best = chosen[:]
            return
        v = candidates[0]
        rest = candidates[1:]
        grow(chosen + [v], [u for u in rest if u not in conflicts[v]])
        grow(chosen, rest)

    grow([], sorted(conflicts, key=lambda i: len(conflicts[i])))
    return IndependentSet(tuple(rects[i] for i in best), sign, exact=True)


@dataclass(frozen=True)
class MirReport:
    i_size: int
    mir: Fraction

    @classmethod
    def from_parts(cls, i_size: int, n: int) -> "MirReport":
        return cls(i_size, Fraction(i_size, 2) + n)


def mir(X: PermutationPointSet, limit: int = 24) -> MirReport:
    iset = max_independent_rectangles(X, Sign.BOTH, "exact", limit)
    return MirReport.from_parts(iset.size, X.n)


# ---------------------------------------------------------------------------
# small manhattan networks


def is_manhattan_network(X: PermutationPointSet, Y: Iterable[Point]) -> bool:
    """Manhattan connectivity between the input pairs only; helper points of
    Y need not be mutually connected (the relaxation below satisfaction)."""
    pts = frozenset(Y)
    if not X.points <= pts:
        raise ValueError("the network must contain the input points")
    for a, b in itertools.combinations(sorted(X.points), 2):
        if not manhattan_path_exists(pts, a, b):
            return False
    return True


def gkks_network(X: PermutationPointSet) -> PointSuperset:
    """Median-split network: project the current block onto its median
    column and recurse on both halves, for about n log2 n points.

    Every added point lies on a recursion split column; every cross-block
    pair routes monotonically through the shared column.
    """
    extra: set[Point] = set()

    def recurse(block: list[Point]) -> None:
        if len(block) <= 1:
            return
        block = sorted(block)  # by x
        mid = (len(block) - 1) // 2
        v = block[mid].x  # split column: rightmost column of the left half
        extra.update(Point(v, p.y) for p in block)
        recurse(block[: mid + 1])
        recurse(block[mid + 1 :])

    recurse(sorted(X.points))
    return PointSuperset(X, frozenset(extra - X.points))


@dataclass(frozen=True)
class SignedMnReport:
    opt_plus: OptimumReport
    opt_minus: OptimumReport
    opt_both: OptimumReport
    i_plus: int
    i_minus: int
    mir: Fraction


def verify_signed_mn_lower_bound(X: PermutationPointSet, limit: int = 5) -> SignedMnReport:
    """Compute the signed network optima by brute force and check the
    independent-rectangle lower bounds: each signed optimum is at least
    n plus the matching independent count, and the unsigned optimum is at
    least the half-sum bound."""
    opt_plus = brute_force_opt(X, Sign.PLUS, "manhattan-network", limit)
    opt_minus = brute_force_opt(X, Sign.MINUS, "manhattan-network", limit)
    opt_both = brute_force_opt(X, Sign.BOTH, "manhattan-network", limit)
    i_plus = max_independent_rectangles(X, Sign.PLUS).size
    i_minus = max_independent_rectangles(X, Sign.MINUS).size
    m = mir(X).mir
    if opt_plus.optimum < X.n + i_plus:
        raise AssertionError("plus-network optimum beats its rectangle bound")
    if opt_minus.optimum < X.n + i_minus:
        raise AssertionError("minus-network optimum beats its rectangle bound")
    if Fraction(opt_both.optimum) < m:
        raise AssertionError("network optimum beats the half-sum rectangle bound")
    return SignedMnReport(opt_plus, opt_minus, opt_both, i_plus, i_minus, m)
