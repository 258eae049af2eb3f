"""Grid geometry shared by every model.

Everything downstream lives on the integer grid {0..n+1} x {0..n+1}: the
input permutation occupies the interior [n] x [n], rows/columns 0 and n+1
carry margin points, and the four corners are never used.  All predicates
are exact integer arithmetic.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence


class Point(NamedTuple):
    x: int
    y: int

    def __repr__(self) -> str:  # (x,y) reads better than Point(x=..) in diffs
        return f"({self.x},{self.y})"


def orientation(a: Point, b: Point) -> Optional[str]:
    """Diagonal orientation of a pair: 'plus' (positive slope), 'minus',
    or None when the points share a row or column."""
    if a.x == b.x or a.y == b.y:
        return None
    return "plus" if (a.x < b.x) == (a.y < b.y) else "minus"


@dataclass(frozen=True)
class PermutationPointSet:
    """A permutation (x_1, .., x_n) doubled as the planar points {(x_i, i)}.

    The y-coordinate is time (row i holds the i-th value), the
    x-coordinate is the value itself.
    """

    seq: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.seq)
        seen = set()
        for v in self.seq:
            if not isinstance(v, int):
                raise ValueError(f"non-integer value {v!r}")
            if not 1 <= v <= n:
                raise ValueError(f"value {v} out of range 1..{n}")
            if v in seen:
                raise ValueError(f"duplicate value {v}")
            seen.add(v)

    @property
    def n(self) -> int:
        return len(self.seq)

    @cached_property
    def points(self) -> frozenset[Point]:
        return frozenset(Point(v, i) for i, v in enumerate(self.seq, start=1))

    def point_at_row(self, i: int) -> Point:
        return Point(self.seq[i - 1], i)

    def __iter__(self):
        return iter(self.seq)


def make_permutation_point_set(seq: Sequence[int]) -> PermutationPointSet:
    return PermutationPointSet(tuple(seq))


@dataclass(frozen=True)
class GridFrame:
    """The (n+2)x(n+2) grid around an instance of size n."""

    n: int

    @cached_property
    def corner_points(self) -> frozenset[Point]:
        m = self.n + 1
        return frozenset({Point(0, 0), Point(0, m), Point(m, 0), Point(m, m)})

    @cached_property
    def margin_points(self) -> frozenset[Point]:
        m = self.n + 1
        pts = set()
        for i in range(1, self.n + 1):
            pts.update({Point(i, 0), Point(i, m), Point(0, i), Point(m, i)})
        return frozenset(pts)

    def in_grid(self, p: Point) -> bool:
        return 0 <= p.x <= self.n + 1 and 0 <= p.y <= self.n + 1

    def is_corner(self, p: Point) -> bool:
        return p.x in (0, self.n + 1) and p.y in (0, self.n + 1)

    def is_margin(self, p: Point) -> bool:
        return (p.x in (0, self.n + 1)) != (p.y in (0, self.n + 1))

    def is_interior(self, p: Point) -> bool:
        return 1 <= p.x <= self.n and 1 <= p.y <= self.n


FAMILIES = ("bit_reversal", "sequential", "random", "separable")


@dataclass(frozen=True)
class FamilySpec:
    """Named input family: which permutation to generate, at what size."""

    family: str
    n: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.family == "bit_reversal" and self.n & (self.n - 1) != 0:
            raise ValueError("bit_reversal requires n to be a power of two")


def _bit_reversal(n: int) -> tuple[int, ...]:
    bits = n.bit_length() - 1
    out = []
    for i in range(n):
        r = 0
        for b in range(bits):
            if i >> b & 1:
                r |= 1 << (bits - 1 - b)
        out.append(r + 1)
    return tuple(out)


def _random_separable(n: int, rng: random.Random) -> tuple[int, ...]:
    # Separable permutations: closed under direct/skew sums of singletons.
    if n == 1:
        return (1,)
    k = rng.randint(1, n - 1)
    left = _random_separable(k, rng)
    right = _random_separable(n - k, rng)
    if rng.random() < 0.5:  # direct sum: right block shifted above/right
        return left + tuple(v + k for v in right)
    return tuple(v + (n - k) for v in left) + right


def generate(spec: FamilySpec) -> PermutationPointSet:
    """Build the permutation point set for a family spec (seed-deterministic)."""
    if spec.family == "sequential":
        seq: tuple[int, ...] = tuple(range(1, spec.n + 1))
    elif spec.family == "bit_reversal":
        seq = _bit_reversal(spec.n)
    elif spec.family == "random":
        vals = list(range(1, spec.n + 1))
        random.Random(spec.seed).shuffle(vals)
        seq = tuple(vals)
    else:
        seq = _random_separable(spec.n, random.Random(spec.seed))
    return PermutationPointSet(seq)


def rect_is_empty(points: Iterable[Point], a: Point, b: Point) -> bool:
    """True iff the closed rectangle spanned by a and b holds no point of the
    set other than a and b themselves (boundary counts as inside)."""
    lox, hix = min(a.x, b.x), max(a.x, b.x)
    loy, hiy = min(a.y, b.y), max(a.y, b.y)
    for p in points:
        if p == a or p == b:
            continue
        if lox <= p.x <= hix and loy <= p.y <= hiy:
            return False
    return True


def manhattan_path(Y: Iterable[Point], a: Point, b: Point) -> Optional[list[Point]]:
    """A witness monotone staircase path from a to b through Y, or None.

    Consecutive points share a row or column and both coordinate sequences
    are monotone, so every usable point lies in the closed rectangle spanned
    by a and b; the search is a BFS over direction-consistent hops inside
    that rectangle.
    """
    pts = set(Y) if not isinstance(Y, (set, frozenset)) else Y
    if a not in pts:
        raise ValueError(f"{a} not in the point set")
    if b not in pts:
        raise ValueError(f"{b} not in the point set")
    if a == b:
        return [a]
    lox, hix = min(a.x, b.x), max(a.x, b.x)
    loy, hiy = min(a.y, b.y), max(a.y, b.y)
    xdir = 1 if b.x >= a.x else -1
    ydir = 1 if b.y >= a.y else -1
    box = [p for p in pts if lox <= p.x <= hix and loy <= p.y <= hiy]

    def hops(p: Point):
        for q in box:
            if q == p:
                continue
            if q.x != p.x and q.y != p.y:
                continue
            if (q.x - p.x) * xdir < 0 or (q.y - p.y) * ydir < 0:
                continue
            yield q

    prev: dict[Point, Point] = {a: a}
    queue = deque([a])
    while queue:
        p = queue.popleft()
        if p == b:
            path = [b]
            while path[-1] != a:
                path.append(prev[path[-1]])
            return path[::-1]
        for q in hops(p):
            if q not in prev:
                prev[q] = p
                queue.append(q)
    return None


def manhattan_path_exists(Y: Iterable[Point], a: Point, b: Point) -> bool:
    return manhattan_path(Y, a, b) is not None
