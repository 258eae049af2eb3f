"""Rectangulation state machine.

A state (P, L) holds points and non-crossing axis-parallel segments whose
only P-points are their endpoints.  Validity is parametrized by the set of
degree-2 corner shapes ("elbows") a non-margin point may form.  Flips add
one segment (splitting host segments at the new endpoints), removals delete
one segment for free, and the A-operations pivot or re-hang segments as a
unit.  The goal state is all-horizontal with every interior row covered.
"""
from __future__ import annotations

import itertools
from bisect import bisect_left, bisect_right, insort
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, NamedTuple, Optional

from .geometry import GridFrame, PermutationPointSet, Point


class Elbow(Enum):
    """Orientation of a degree-2 perpendicular corner: vertical arm
    direction then horizontal arm direction."""

    UR = ("U", "R")
    UL = ("U", "L")
    DR = ("D", "R")
    DL = ("D", "L")

    @property
    def vertical_arm(self) -> str:
        return self.value[0]

    @property
    def horizontal_arm(self) -> str:
        return self.value[1]


AllowedElbows = frozenset  # of Elbow

ELBOWS_NONE: AllowedElbows = frozenset()
CLASS_P: AllowedElbows = frozenset({Elbow.UR, Elbow.DL})
CLASS_M: AllowedElbows = frozenset({Elbow.UL, Elbow.DR})
ONLY_UR: AllowedElbows = frozenset({Elbow.UR})
ONLY_UL: AllowedElbows = frozenset({Elbow.UL})
ONLY_DR: AllowedElbows = frozenset({Elbow.DR})
ONLY_DL: AllowedElbows = frozenset({Elbow.DL})
# pairs adjacent in the clockwise cycle UR, DR, DL, UL
PAIR_UR_DR: AllowedElbows = frozenset({Elbow.UR, Elbow.DR})
PAIR_DR_DL: AllowedElbows = frozenset({Elbow.DR, Elbow.DL})
PAIR_DL_UL: AllowedElbows = frozenset({Elbow.DL, Elbow.UL})
PAIR_UL_UR: AllowedElbows = frozenset({Elbow.UL, Elbow.UR})
NEIGHBOR_PAIRS = (PAIR_UR_DR, PAIR_DR_DL, PAIR_DL_UL, PAIR_UL_UR)

ELBOW_PRESETS = {
    "none": ELBOWS_NONE,
    "classP": CLASS_P,
    "classM": CLASS_M,
    "UR": ONLY_UR,
    "UL": ONLY_UL,
    "DR": ONLY_DR,
    "DL": ONLY_DL,
    "UR+DR": PAIR_UR_DR,
    "DR+DL": PAIR_DR_DL,
    "DL+UL": PAIR_DL_UL,
    "UL+UR": PAIR_UL_UR,
}


class Segment(NamedTuple):
    p: Point
    q: Point

    @classmethod
    def make(cls, a: Point, b: Point) -> "Segment":
        if a == b:
            raise ValueError("zero-length segment")
        if a.x != b.x and a.y != b.y:
            raise ValueError(f"segment {a}-{b} is not axis-parallel")
        return cls(a, b) if (a.x, a.y) <= (b.x, b.y) else cls(b, a)

    @property
    def horizontal(self) -> bool:
        return self.p.y == self.q.y

    @property
    def vertical(self) -> bool:
        return self.p.x == self.q.x

    def __repr__(self) -> str:
        return f"[{self.p}-{self.q}]"


class Violation(NamedTuple):
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


class RectError(ValueError):
    pass


class InvalidFlip(RectError):
    def __init__(self, a: Point, b: Point, violations: list[Violation]):
        super().__init__(f"flip <{a},{b}> invalid: " + "; ".join(map(str, violations)))
        self.violations = violations


class InvalidRemoval(RectError):
    def __init__(self, seg: Segment, violations: list[Violation]):
        super().__init__(f"removal of {seg} invalid: " + "; ".join(map(str, violations)))
        self.violations = violations


class InvalidAOp(RectError):
    pass


class StateLimitExceeded(RectError):
    pass


@dataclass(frozen=True)
class RectState:
    """Immutable snapshot of a rectangulation state."""

    n: int
    points: frozenset[Point]
    segments: frozenset[Segment]

    @cached_property
    def frame(self) -> GridFrame:
        return GridFrame(self.n)

    def canonical(self) -> tuple[Segment, ...]:
        """The segment set alone identifies a state (all other points are
        margin or segment endpoints), so sorted L is the canonical form."""
        return tuple(sorted(self.segments))


@dataclass(frozen=True)
class FlipStep:
    kind: str  # "flip" | "remove"
    a: Point
    b: Point

    def __post_init__(self) -> None:
        if self.kind not in ("flip", "remove"):
            raise ValueError(f"unknown step kind {self.kind!r}")

    @property
    def segment(self) -> Segment:
        return Segment.make(self.a, self.b)


@dataclass(frozen=True)
class FlipSequence:
    """An ordered run of flips and (free) removals for one input."""

    x: PermutationPointSet
    steps: tuple[FlipStep, ...]

    @property
    def cost(self) -> int:
        return sum(1 for s in self.steps if s.kind == "flip")


def flip(a: Point, b: Point) -> FlipStep:
    return FlipStep("flip", a, b)


def removal(a: Point, b: Point) -> FlipStep:
    return FlipStep("remove", a, b)


# ---------------------------------------------------------------------------
# the mutable board


class Board:
    """Mutable rectangulation state with per-row/column interval indexes.

    Interval lists are kept sorted by lower endpoint; every mutating
    operation validates locally before touching anything, so a raised
    InvalidFlip/InvalidRemoval leaves the board unchanged.
    """

    def __init__(self, X: PermutationPointSet):
        self.n = X.n
        self.frame = GridFrame(X.n)
        self.x_points = X.points
        self.points: set[Point] = set(X.points) | set(self.frame.margin_points)
        self.cols: dict[int, list[tuple[int, int]]] = {}
        self.rows: dict[int, list[tuple[int, int]]] = {}
        self.pts_by_row: dict[int, list[int]] = {}
        self.pts_by_col: dict[int, list[int]] = {}
        for p in self.points:
            insort(self.pts_by_row.setdefault(p.y, []), p.x)
            insort(self.pts_by_col.setdefault(p.x, []), p.y)
        for x, y in X.points:
            insort(self.cols.setdefault(x, []), (0, y))
            insort(self.cols[x], (y, self.n + 1))

    # -- queries ------------------------------------------------------------

    def segments(self) -> set[Segment]:
        segs = set()
        for x, ivs in self.cols.items():
            segs.update(Segment(Point(x, s), Point(x, e)) for s, e in ivs)
        for y, ivs in self.rows.items():
            segs.update(Segment(Point(s, y), Point(e, y)) for s, e in ivs)
        return segs

    def snapshot(self) -> RectState:
        return RectState(self.n, frozenset(self.points), frozenset(self.segments()))

    def has_segment(self, seg: Segment) -> bool:
        if seg.vertical:
            return (seg.p.y, seg.q.y) in self.cols.get(seg.p.x, [])
        return (seg.p.x, seg.q.x) in self.rows.get(seg.p.y, [])

    def arms(self, p: Point) -> set[str]:
        out = set()
        for s, e in self.cols.get(p.x, []):
            if e == p.y:
                out.add("D")
            elif s == p.y:
                out.add("U")
        for s, e in self.rows.get(p.y, []):
            if e == p.x:
                out.add("L")
            elif s == p.x:
                out.add("R")
        return out

    def crossing_interval(self, ivs: list[tuple[int, int]], c: int) -> Optional[tuple[int, int]]:
        """Interval strictly containing coordinate c, if any."""
        i = bisect_right(ivs, (c, self.n + 2)) - 1
        if i >= 0 and ivs[i][0] < c < ivs[i][1]:
            return ivs[i]
        return None

    def points_strictly_between(self, index: dict[int, list[int]], line: int, lo: int, hi: int) -> list[int]:
        coords = index.get(line, [])
        i, j = bisect_right(coords, lo), bisect_left(coords, hi)
        return coords[i:j]

    def _elbow_ok(self, armset: set[str], allowed: AllowedElbows) -> bool:
        if len(armset) >= 3:
            return True
        if len(armset) != 2:
            return False
        if armset in ({"U", "D"}, {"L", "R"}):
            return True
        v = "U" if "U" in armset else "D"
        h = "L" if "L" in armset else "R"
        return Elbow((v, h)) in allowed

    def point_ok(self, p: Point, armset: set[str], allowed: AllowedElbows) -> bool:
        if self.frame.is_margin(p):
            return True
        return self._elbow_ok(armset, allowed)

    # -- flips --------------------------------------------------------------

    def flip_violations(self, a: Point, b: Point, allowed: AllowedElbows) -> list[Violation]:
        out: list[Violation] = []
        for p in (a, b):
            if not self.frame.in_grid(p):
                return [Violation("grid", f"{p} outside the grid")]
            if self.frame.is_corner(p):
                return [Violation("corner", f"{p} is a corner point")]
        if a == b:
            return [Violation("degenerate", "zero-length flip")]
        if a.x != b.x and a.y != b.y:
            return [Violation("orientation", f"<{a},{b}> is not axis-parallel")]
        horizontal = a.y == b.y
        if horizontal and a.y in (0, self.n + 1):
            return [Violation("margin-line", "segment lies on a margin row")]
        if not horizontal and a.x in (0, self.n + 1):
            return [Violation("margin-line", "segment lies on a margin column")]

        if horizontal:
            y = a.y
            lo, hi = min(a.x, b.x), max(a.x, b.x)
            for s, e in self.rows.get(y, []):
                if max(s, lo) < min(e, hi):
                    out.append(Violation("crossing", f"overlaps row segment [{s},{e}]@y={y}"))
            inner = self.points_strictly_between(self.pts_by_row, y, lo, hi)
            if inner:
                out.append(Violation("segment-points", f"interior points at x={inner} on y={y}"))
            for c in range(lo + 1, hi):
                ivs = self.cols.get(c)
                if ivs and self.crossing_interval(ivs, y):
                    out.append(Violation("crossing", f"crosses vertical at x={c}"))
            host_index, span_index = self.cols, "y"
        else:
            x = a.x
            lo, hi = min(a.y, b.y), max(a.y, b.y)
            for s, e in self.cols.get(x, []):
                if max(s, lo) < min(e, hi):
                    out.append(Violation("crossing", f"overlaps column segment [{s},{e}]@x={x}"))
            inner = self.points_strictly_between(self.pts_by_col, x, lo, hi)
            if inner:
                out.append(Violation("segment-points", f"interior points at y={inner} on x={x}"))
            for r in range(lo + 1, hi):
                ivs = self.rows.get(r)
                if ivs and self.crossing_interval(ivs, x):
                    out.append(Violation("crossing", f"crosses horizontal at y={r}"))
        if out:
            return out

        new_arm = {True: ("R", "L"), False: ("U", "D")}[horizontal]
        for p, arm in ((min(a, b), new_arm[0]), (max(a, b), new_arm[1])):
            arm_after = self.arms(p) | {arm}
            if p not in self.points:
                host = self.crossing_interval(
                    self.cols.get(p.x, []) if horizontal else self.rows.get(p.y, []), p.y if horizontal else p.x
                )
                if host is None:
                    if not self.frame.is_margin(p):
                        out.append(Violation("degree", f"endpoint {p} attaches to nothing"))
                        continue
                else:
                    arm_after |= {"U", "D"} if horizontal else {"L", "R"}
            if not self.point_ok(p, arm_after, allowed):
                out.append(Violation("elbow", f"endpoint {p} would have arms {sorted(arm_after)}"))
        return out

    def _split_host(self, p: Point, vertical_host: bool) -> None:
        if vertical_host:
            ivs = self.cols[p.x]
            host = self.crossing_interval(ivs, p.y)
            if host:
                ivs.remove(host)
                insort(ivs, (host[0], p.y))
                insort(ivs, (p.y, host[1]))
        else:
            ivs = self.rows[p.y]
            host = self.crossing_interval(ivs, p.x)
            if host:
                ivs.remove(host)
                insort(ivs, (host[0], p.x))
                insort(ivs, (p.x, host[1]))

    def _add_point(self, p: Point) -> None:
        if p not in self.points:
            self.points.add(p)
            insort(self.pts_by_row.setdefault(p.y, []), p.x)
            insort(self.pts_by_col.setdefault(p.x, []), p.y)

    def _drop_point(self, p: Point) -> None:
        self.points.discard(p)
        self.pts_by_row[p.y].remove(p.x)
        self.pts_by_col[p.x].remove(p.y)

    def apply_flip(self, a: Point, b: Point, allowed: AllowedElbows) -> None:
        bad = self.flip_violations(a, b, allowed)
        if bad:
            raise InvalidFlip(a, b, bad)
        horizontal = a.y == b.y
        for p in (a, b):
            if p not in self.points:
                self._split_host(p, vertical_host=horizontal)
                self._add_point(p)
        if horizontal:
            insort(self.rows.setdefault(a.y, []), (min(a.x, b.x), max(a.x, b.x)))
        else:
            insort(self.cols.setdefault(a.x, []), (min(a.y, b.y), max(a.y, b.y)))

    # -- removals -----------------------------------------------------------

    def removal_violations(self, seg: Segment, allowed: AllowedElbows) -> list[Violation]:
        if not self.has_segment(seg):
            return [Violation("missing", f"{seg} not in the state")]
        arm_gone = {True: ("R", "L"), False: ("U", "D")}[seg.horizontal]
        out = []
        for p, arm in ((seg.p, arm_gone[0]), (seg.q, arm_gone[1])):
            if self.frame.is_margin(p):
                continue
            arm_after = self.arms(p) - {arm}
            if not arm_after:
                if p in self.x_points:
                    out.append(Violation("degree", f"input point {p} would be stranded"))
                continue  # orphaned helper point: dropped, no rule applies
            if not self.point_ok(p, arm_after, allowed):
                out.append(Violation("elbow", f"endpoint {p} would have arms {sorted(arm_after)}"))
        return out

    def remove_segment(self, seg: Segment, allowed: AllowedElbows) -> None:
        bad = self.removal_violations(seg, allowed)
        if bad:
            raise InvalidRemoval(seg, bad)
        if seg.vertical:
            self.cols[seg.p.x].remove((seg.p.y, seg.q.y))
        else:
            self.rows[seg.p.y].remove((seg.p.x, seg.q.x))
        for p in (seg.p, seg.q):
            if not self.frame.is_margin(p) and not self.arms(p) and p not in self.x_points:
                self._drop_point(p)

    def remove_all_possible(
        self,
        allowed: AllowedElbows,
        columns: Optional[Iterable[int]] = None,
        record: Optional[list[FlipStep]] = None,
    ) -> int:
        """Remove vertical segments to a fixpoint, scanning bottom-to-top then
        left-to-right.  Removability of a vertical only depends on arms of
        points in its own column, so a column hint confines the scan."""
        todo = set(self.cols) if columns is None else {c for c in columns if c in self.cols}
        removed = 0
        while todo:
            progress = False
            candidates = sorted(
                (s, x) for x in todo for (s, e) in self.cols.get(x, [])
            )
            for s, x in candidates:
                ivs = self.cols.get(x, [])
                match = [iv for iv in ivs if iv[0] == s]
                if not match:
                    continue
                seg = Segment(Point(x, s), Point(x, match[0][1]))
                if not self.removal_violations(seg, allowed):
                    self.remove_segment(seg, allowed)
                    if record is not None:
                        record.append(removal(seg.p, seg.q))
                    removed += 1
                    progress = True
            if not progress:
                break
            todo = {c for c in todo if c in self.cols and self.cols[c]}
        return removed

    # -- end state ----------------------------------------------------------

    def row_cover(self, y: int) -> bool:
        ivs = self.rows.get(y, [])
        reach = 0
        for s, e in ivs:
            if s > reach:
                return False
            reach = max(reach, e)
        return reach >= self.n + 1

    def is_end_state(self) -> bool:
        if any(self.cols.get(x) for x in self.cols):
            return False
        return all(self.row_cover(y) for y in range(1, self.n + 1))


# ---------------------------------------------------------------------------
# public functional API


def initial_state(X: PermutationPointSet) -> RectState:
    return Board(X).snapshot()


def board_from_state(state: RectState, X: Optional[PermutationPointSet] = None) -> Board:
    b = Board.__new__(Board)
    b.n = state.n
    b.frame = GridFrame(state.n)
    b.x_points = X.points if X is not None else frozenset()
    b.points = set(state.points)
    b.cols, b.rows = {}, {}
    b.pts_by_row, b.pts_by_col = {}, {}
    for p in b.points:
        insort(b.pts_by_row.setdefault(p.y, []), p.x)
        insort(b.pts_by_col.setdefault(p.x, []), p.y)
    for seg in state.segments:
        if seg.vertical:
            insort(b.cols.setdefault(seg.p.x, []), (seg.p.y, seg.q.y))
        else:
            insort(b.rows.setdefault(seg.p.y, []), (seg.p.x, seg.q.x))
    return b


def apply_flip(
    state: RectState, a: Point, b: Point, elbows: AllowedElbows = ELBOWS_NONE
) -> RectState:
    board = board_from_state(state)
    board.apply_flip(a, b, elbows)
    return board.snapshot()


def remove_segment(
    state: RectState, seg: Segment, elbows: AllowedElbows = ELBOWS_NONE
) -> RectState:
    board = board_from_state(state)
    board.remove_segment(seg, elbows)
    return board.snapshot()


def is_end_state(state: RectState) -> bool:
    return not is_valid_state(state, ELBOWS_NONE) and board_from_state(state).is_end_state()


def is_valid_state(state: RectState, elbows: AllowedElbows = ELBOWS_NONE) -> list[Violation]:
    """Global validity check, built independently of the incremental board
    bookkeeping: well-formed segments, exactly-two-P-points per segment, no
    crossings, and the (parametrized) elbow rule at every non-margin point."""
    out: list[Violation] = []
    frame = GridFrame(state.n)
    for p in state.points:
        if not frame.in_grid(p) or frame.is_corner(p):
            out.append(Violation("grid", f"point {p} is a corner or outside the grid"))
    cols: dict[int, list[tuple[int, int]]] = {}
    rows: dict[int, list[tuple[int, int]]] = {}
    for seg in state.segments:
        for p in (seg.p, seg.q):
            if p not in state.points:
                out.append(Violation("segment-points", f"endpoint {p} of {seg} not in P"))
        if seg.vertical:
            if seg.p.x in (0, state.n + 1):
                out.append(Violation("margin-line", f"{seg} lies on a margin column"))
            cols.setdefault(seg.p.x, []).append((seg.p.y, seg.q.y))
        else:
            if seg.p.y in (0, state.n + 1):
                out.append(Violation("margin-line", f"{seg} lies on a margin row"))
            rows.setdefault(seg.p.y, []).append((seg.p.x, seg.q.x))
    for x, ivs in cols.items():
        ivs.sort()
        for (s1, e1), (s2, e2) in zip(ivs, ivs[1:]):
            if s2 < e1:
                out.append(Violation("crossing", f"column {x}: [{s1},{e1}] overlaps [{s2},{e2}]"))
    for y, ivs in rows.items():
        ivs.sort()
        for (s1, e1), (s2, e2) in zip(ivs, ivs[1:]):
            if s2 < e1:
                out.append(Violation("crossing", f"row {y}: [{s1},{e1}] overlaps [{s2},{e2}]"))
    pts_by_row: dict[int, list[int]] = {}
    pts_by_col: dict[int, list[int]] = {}
    for p in state.points:
        pts_by_row.setdefault(p.y, []).append(p.x)
        pts_by_col.setdefault(p.x, []).append(p.y)
    for lst in pts_by_row.values():
        lst.sort()
    for lst in pts_by_col.values():
        lst.sort()
    for y, ivs in rows.items():
        coords = pts_by_row.get(y, [])
        for s, e in ivs:
            inside = coords[bisect_right(coords, s) : bisect_left(coords, e)]
            if inside:
                out.append(Violation("segment-points", f"row {y}: points at x={inside} inside [{s},{e}]"))
    for x, ivs in cols.items():
        coords = pts_by_col.get(x, [])
        for s, e in ivs:
            inside = coords[bisect_right(coords, s) : bisect_left(coords, e)]
            if inside:
                out.append(Violation("segment-points", f"column {x}: points at y={inside} inside [{s},{e}]"))
    for x, civs in cols.items():
        for s, e in civs:
            for y in range(s + 1, e):
                for hs, he in rows.get(y, []):
                    if hs < x < he:
                        out.append(Violation("crossing", f"column {x} crosses row {y}"))
    board = board_from_state(state)
    for p in state.points:
        if frame.is_margin(p) or frame.is_corner(p):
            continue
        armset = board.arms(p)
        if len(armset) < 2:
            out.append(Violation("degree", f"{p} lies on {len(armset)} segment(s)"))
        elif not board._elbow_ok(armset, elbows):
            out.append(Violation("elbow", f"{p} forms a forbidden elbow {sorted(armset)}"))
    return out


def enumerate_valid_flips(
    state: RectState, elbows: AllowedElbows = ELBOWS_NONE
) -> list[tuple[Point, Point]]:
    """Every pair (a, b) for which apply_flip succeeds.  Candidates range
    over all same-row/same-column grid point pairs; desk-scale only."""
    board = board_from_state(state)
    n = state.n
    out = []
    for y in range(1, n + 1):
        for x1, x2 in itertools.combinations(range(0, n + 2), 2):
            a, b = Point(x1, y), Point(x2, y)
            if not board.flip_violations(a, b, elbows):
                out.append((a, b))
    for x in range(1, n + 1):
        for y1, y2 in itertools.combinations(range(0, n + 2), 2):
            a, b = Point(x, y1), Point(x, y2)
            if not board.flip_violations(a, b, elbows):
                out.append((a, b))
    return out


def enumerate_valid_removals(
    state: RectState, elbows: AllowedElbows = ELBOWS_NONE
) -> list[Segment]:
    board = board_from_state(state)
    return [seg for seg in sorted(state.segments) if not board.removal_violations(seg, elbows)]


# ---------------------------------------------------------------------------
# A-operations


def _resegment(segments: set[Segment], at: Point) -> set[Segment]:
    """Split any segment containing `at` in its interior."""
    out = set()
    for seg in segments:
        if seg.vertical and seg.p.x == at.x and seg.p.y < at.y < seg.q.y:
            out.add(Segment(seg.p, at))
            out.add(Segment(at, seg.q))
        elif seg.horizontal and seg.p.y == at.y and seg.p.x < at.x < seg.q.x:
            out.add(Segment(seg.p, at))
            out.add(Segment(at, seg.q))
        else:
            out.add(seg)
    return out


def apply_a_rotate(
    state: RectState, seg: Segment, pivot_end: Point, new_far_end: Point
) -> RectState:
    """Pivot one segment around an endpoint: remove [x,y], add [x,z] with the
    perpendicular orientation; the result must be plainly valid."""
    if seg not in state.segments:
        raise InvalidAOp(f"{seg} not in the state")
    if pivot_end not in (seg.p, seg.q):
        raise InvalidAOp(f"{pivot_end} is not an endpoint of {seg}")
    try:
        new_seg = Segment.make(pivot_end, new_far_end)
    except ValueError as exc:
        raise InvalidAOp(str(exc)) from exc
    if new_seg.vertical == seg.vertical:
        raise InvalidAOp("replacement segment must be perpendicular")
    segments = set(state.segments)
    segments.remove(seg)
    segments = _resegment(segments, new_far_end)
    if new_seg in segments:
        raise InvalidAOp("replacement segment already present")
    segments.add(new_seg)
    new_state = RectState(state.n, state.points | {new_far_end}, frozenset(segments))
    bad = is_valid_state(new_state, ELBOWS_NONE)
    if bad:
        raise InvalidAOp("resulting state invalid: " + "; ".join(map(str, bad)))
    return new_state


def apply_a_flip(
    state: RectState, seg1: Segment, seg2: Segment, new1: Point, new2: Point
) -> RectState:
    """Re-hang two collinear segments sharing a point: remove [x,y],[y,z],
    add the perpendicular [v,y],[y,w]; the result must be plainly valid."""
    for s in (seg1, seg2):
        if s not in state.segments:
            raise InvalidAOp(f"{s} not in the state")
    if seg1.vertical != seg2.vertical:
        raise InvalidAOp("the removed segments must share an orientation")
    shared = {seg1.p, seg1.q} & {seg2.p, seg2.q}
    if len(shared) != 1:
        raise InvalidAOp("the removed segments must share exactly one endpoint")
    y = shared.pop()
    try:
        n1, n2 = Segment.make(new1, y), Segment.make(y, new2)
    except ValueError as exc:
        raise InvalidAOp(str(exc)) from exc
    if n1.vertical != n2.vertical or n1.vertical == seg1.vertical:
        raise InvalidAOp("replacement segments must be collinear and perpendicular to the removed ones")
    segments = set(state.segments)
    segments -= {seg1, seg2}
    segments = _resegment(_resegment(segments, new1), new2)
    if n1 in segments or n2 in segments:
        raise InvalidAOp("replacement segment already present")
    segments |= {n1, n2}
    new_state = RectState(state.n, state.points | {new1, new2}, frozenset(segments))
    bad = is_valid_state(new_state, ELBOWS_NONE)
    if bad:
        raise InvalidAOp("resulting state invalid: " + "; ".join(map(str, bad)))
    return new_state


def enumerate_valid_a_ops(state: RectState) -> list[tuple]:
    """All valid A-rotates ('arotate', seg, pivot, far) and A-flips
    ('aflip', seg1, seg2, v, w) on a state.  Desk-scale enumeration."""
    n = state.n
    grid = [
        Point(x, y)
        for x in range(0, n + 2)
        for y in range(0, n + 2)
        if not GridFrame(n).is_corner(Point(x, y))
    ]
    ops: list[tuple] = []
    for seg in sorted(state.segments):
        for pivot in (seg.p, seg.q):
            for z in grid:
                if z == pivot:
                    continue
                if (z.x == pivot.x) == seg.vertical:
                    continue  # would be parallel before even checking
                if z.x != pivot.x and z.y != pivot.y:
                    continue
                try:
                    apply_a_rotate(state, seg, pivot, z)
                except InvalidAOp:
                    continue
                ops.append(("arotate", seg, pivot, z))
    segs = sorted(state.segments)
    for s1, s2 in itertools.combinations(segs, 2):
        if s1.vertical != s2.vertical:
            continue
        shared = {s1.p, s1.q} & {s2.p, s2.q}
        if len(shared) != 1:
            continue
        y = shared.pop()
        line = (
            [Point(x, y.y) for x in range(0, n + 2)]
            if s1.vertical
            else [Point(y.x, yy) for yy in range(0, n + 2)]
        )
        line = [p for p in line if p != y and not GridFrame(n).is_corner(p)]
        before = [p for p in line if (p.x, p.y) < (y.x, y.y)]
        after = [p for p in line if (p.x, p.y) > (y.x, y.y)]
        for v in before:
            for w in after:
                try:
                    apply_a_flip(state, s1, s2, v, w)
                except InvalidAOp:
                    continue
                ops.append(("aflip", s1, s2, v, w))
    return ops


# ---------------------------------------------------------------------------
# replay and diameter search


class ReplayError(RectError):
    pass


def replay(
    fs: FlipSequence,
    elbows: AllowedElbows = ELBOWS_NONE,
    check_each_state: bool = False,
) -> RectState:
    """Execute a flip sequence from the initial state, validating every step.

    With check_each_state the full global validator runs after every step
    (slow; used by tests as the independent route)."""
    board = Board(fs.x)
    for idx, step in enumerate(fs.steps):
        try:
            if step.kind == "flip":
                board.apply_flip(step.a, step.b, elbows)
            else:
                board.remove_segment(step.segment, elbows)
        except RectError as exc:
            raise ReplayError(f"step {idx + 1} ({step.kind} {step.a} {step.b}): {exc}") from exc
        if check_each_state:
            bad = is_valid_state(board.snapshot(), elbows)
            if bad:
                raise ReplayError(f"step {idx + 1}: invalid state: {bad[0]}")
    return board.snapshot()


@dataclass(frozen=True)
class DiameterReport:
    diam: int
    state_count: int
    initial_to_end: int  # min distance from the initial state to any end state


def _mode_edges(state: RectState, mode: str) -> list[tuple[RectState, int]]:
    out: list[tuple[RectState, int]] = []
    for seg in enumerate_valid_removals(state, ELBOWS_NONE):
        out.append((remove_segment(state, seg, ELBOWS_NONE), 0))
    if mode == "flips":
        for a, b in enumerate_valid_flips(state, ELBOWS_NONE):
            out.append((apply_flip(state, a, b, ELBOWS_NONE), 1))
    else:
        for op in enumerate_valid_a_ops(state):
            if op[0] == "arotate":
                out.append((apply_a_rotate(state, op[1], op[2], op[3]), 1))
            else:
                out.append((apply_a_flip(state, op[1], op[2], op[3], op[4]), 1))
    return out


def flip_diameter_bfs(
    X: PermutationPointSet, mode: str = "flips", max_states: int = 50_000
) -> DiameterReport:
    """Explore every state reachable from the initial one under the mode's
    local moves (removals are free in both modes), then take the largest
    pairwise shortest-path distance."""
    if mode not in ("flips", "a_ops"):
        raise ValueError(f"unknown mode {mode!r}")
    start = initial_state(X)
    states: dict[tuple, RectState] = {start.canonical(): start}
    adj: dict[tuple, list[tuple[tuple, int]]] = {}
    frontier = deque([start])
    while frontier:
        st = frontier.popleft()
        key = st.canonical()
        if key in adj:
            continue
        edges = []
        for nxt, cost in _mode_edges(st, mode):
            nkey = nxt.canonical()
            edges.append((nkey, cost))
            if nkey not in states:
                states[nkey] = nxt
                if len(states) > max_states:
                    raise StateLimitExceeded(
                        f"more than {max_states} reachable states; raise max_states"
                    )
                frontier.append(nxt)
        adj[key] = edges

    def zero_one_bfs(src: tuple) -> dict[tuple, int]:
        dist = {src: 0}
        dq = deque([src])
        while dq:
            u = dq.popleft()
            for v, w in adj[u]:
                nd = dist[u] + w
                if nd < dist.get(v, nd + 1):
                    dist[v] = nd
                    if w == 0:
                        dq.appendleft(v)
                    else:
                        dq.append(v)
        return dist

    diam = 0
    initial_to_end = -1
    start_key = start.canonical()
    for src in states:
        dist = zero_one_bfs(src)
        if dist:
            diam = max(diam, max(dist.values()))
        if src == start_key:
            ends = [d for key, d in dist.items() if board_from_state(states[key]).is_end_state()]
            initial_to_end = min(ends) if ends else -1
    return DiameterReport(diam, len(states), initial_to_end)


# ---------------------------------------------------------------------------
# the line-by-line linear algorithm for clockwise-neighbor elbow pairs


def initial_phase(
    board: Board, elbows: AllowedElbows, record: list[FlipStep]
) -> dict[int, list[int]]:
    """Top-down opening sweep: give every input point a maximal horizontal
    segment, then remove every removable vertical (in particular the stub
    below each point).  Returns the per-row extents {height: [left, right]}.
    """
    n = board.n
    rows: dict[int, list[int]] = {}
    for i in range(n, 0, -1):
        # row i is untouched so far: its only interior point is the input one
        xs = [x for x in board.pts_by_row[i] if 1 <= x <= n]
        assert len(xs) == 1
        xi = xs[0]
        p = Point(xi, i)
        left = 0
        for c in range(xi - 1, 0, -1):
            if Point(c, i) in board.points or (
                board.cols.get(c) and board.crossing_interval(board.cols[c], i)
            ):
                left = c
                break
        board.apply_flip(Point(left, i), p, elbows)
        record.append(flip(Point(left, i), p))
        right = n + 1
        for c in range(xi + 1, n + 1):
            if Point(c, i) in board.points or (
                board.cols.get(c) and board.crossing_interval(board.cols[c], i)
            ):
                right = c
                break
        board.apply_flip(p, Point(right, i), elbows)
        record.append(flip(p, Point(right, i)))
        board.remove_all_possible(elbows, columns={xi, left, right}, record=record)
        rows[i] = [left, right]
    return rows


def linear_flip_sequence_neighbor_elbows(
    X: PermutationPointSet, elbows: AllowedElbows = PAIR_DR_DL
) -> FlipSequence:
    """Finish the rectangulation line by line under a neighbor-pair elbow
    set, in O(n) flips: after the opening sweep, walk k = n+1 .. 2 removing
    every vertical whose top endpoint sits at height k (the endpoints this
    exposes keep a downward arm, so only {DR, DL} elbows appear) and then
    extending row k-1 to both margins.

    The walk is written for the {DR, DL} pair; {UL, UR} runs through the
    up-down mirror of the grid.  The two horizontal-arm pairs would need a
    different sweep (mirroring them exchanges the all-vertical and
    all-horizontal roles) and are rejected.
    """
    if elbows not in NEIGHBOR_PAIRS:
        raise ValueError("elbows must be one of the four clockwise-neighbor pairs")
    if elbows in (PAIR_DL_UL, PAIR_UR_DR):
        raise ValueError(
            "line-by-line sweep supports the vertical-arm pairs {DR,DL} and {UL,UR} only"
        )
    n = X.n
    if elbows == PAIR_UL_UR:
        flipped = PermutationPointSet(tuple(reversed(X.seq)))
        core = linear_flip_sequence_neighbor_elbows(flipped, PAIR_DR_DL)
        mirror = lambda p: Point(p.x, n + 1 - p.y)
        steps = tuple(
            FlipStep(s.kind, *sorted((mirror(s.a), mirror(s.b)))) for s in core.steps
        )
        return FlipSequence(X, steps)

    board = Board(X)
    record: list[FlipStep] = []
    rows = initial_phase(board, elbows, record)
    for k in range(n + 1, 1, -1):
        for x in sorted(board.cols):
            for s, e in list(board.cols.get(x, [])):
                if e == k:
                    seg = Segment(Point(x, s), Point(x, e))
                    board.remove_segment(seg, elbows)
                    record.append(removal(seg.p, seg.q))
        i = k - 1
        while rows[i][0] > 0:
            cur = rows[i][0]
            left = 0
            for c in range(cur - 1, 0, -1):
                if Point(c, i) in board.points or (
                    board.cols.get(c) and board.crossing_interval(board.cols[c], i)
                ):
                    left = c
                    break
            board.apply_flip(Point(left, i), Point(cur, i), elbows)
            record.append(flip(Point(left, i), Point(cur, i)))
            rows[i][0] = left
        while rows[i][1] < n + 1:
            cur = rows[i][1]
            right = n + 1
            for c in range(cur + 1, n + 1):
                if Point(c, i) in board.points or (
                    board.cols.get(c) and board.crossing_interval(board.cols[c], i)
                ):
                    right = c
                    break
            board.apply_flip(Point(cur, i), Point(right, i), elbows)
            record.append(flip(Point(cur, i), Point(right, i)))
            rows[i][1] = right
    if not board.is_end_state():
        raise RectError("line-by-line sweep did not reach an end state")
    return FlipSequence(X, tuple(record))
