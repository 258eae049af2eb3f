"""Constructive reductions between the models.

Flip runs turn into satisfied supersets by collecting non-margin flip
endpoints; satisfied supersets drive a greedy flip run that completes rows
between consecutive superset points; tree relaxations compile to flip runs
through an invariant-carrying row simulation; A-operations compile to one
or two flips plus free removals.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .geometry import GridFrame, PermutationPointSet, Point
from .rectangulation import (
    AllowedElbows,
    Board,
    CLASS_M,
    CLASS_P,
    ELBOWS_NONE,
    FlipSequence,
    FlipStep,
    InvalidAOp,
    ONLY_DL,
    ONLY_DR,
    ONLY_UL,
    ONLY_UR,
    RectError,
    RectState,
    Segment,
    apply_a_flip,
    apply_a_rotate,
    board_from_state,
    flip,
    initial_phase,
    is_valid_state,
    removal,
    replay,
)
from .satisfied import PointSuperset, Sign, is_satisfied
from .treerelax import EdgeFlip, MonotoneTree, build_treap

# Elbow classes and satisfaction signs pair up through the geometry of the
# blocking argument: a state that only ever exposes {UR, DL} corners keeps
# every negative-slope pair repaired, and symmetrically for {UL, DR}.
SIGN_FOR_ELBOWS = {
    ELBOWS_NONE: Sign.BOTH,
    CLASS_P: Sign.MINUS,
    ONLY_UR: Sign.MINUS,
    ONLY_DL: Sign.MINUS,
    CLASS_M: Sign.PLUS,
    ONLY_UL: Sign.PLUS,
    ONLY_DR: Sign.PLUS,
}

ELBOWS_FOR_SIGN = {Sign.BOTH: ELBOWS_NONE, Sign.PLUS: ONLY_DR, Sign.MINUS: ONLY_DL}


class TransformError(RectError):
    pass


class StuckError(TransformError):
    """The superset-driven greedy found no step; carries the witness pair of
    same-row points whose joining segment is missing."""

    def __init__(self, q: Point, q2: Point):
        super().__init__(f"no flip or removal available; blocked pair {q}, {q2}")
        self.witness = (q, q2)


def rect_to_satisfied(
    fs: FlipSequence, elbows: AllowedElbows = ELBOWS_NONE
) -> PointSuperset:
    """Replay a flip run to an end state and return the input plus every
    non-margin flip endpoint.  The output must satisfy the sign matching the
    elbow class; a failure here is an implementation bug, not bad input."""
    frame = GridFrame(fs.x.n)
    board = Board(fs.x)
    extra: set[Point] = set()
    for idx, step in enumerate(fs.steps):
        if step.kind == "flip":
            board.apply_flip(step.a, step.b, elbows)
            extra.update(p for p in (step.a, step.b) if frame.is_interior(p))
        else:
            board.remove_segment(step.segment, elbows)
    if not board.is_end_state():
        raise TransformError("flip sequence does not reach an end state")
    Y = PointSuperset(fs.x, frozenset(extra - fs.x.points))
    if len(Y.points) > 2 * fs.cost + fs.x.n:
        raise AssertionError("endpoint count exceeds the two-per-flip budget")
    sign = SIGN_FOR_ELBOWS.get(elbows)
    if sign is not None and not is_satisfied(Y.points, sign):
        raise AssertionError(
            f"collected endpoints are not {sign.value}-satisfied; this is a bug"
        )
    return Y


def satisfied_to_rect(
    X: PermutationPointSet,
    Y: PointSuperset,
    elbows: AllowedElbows = ELBOWS_NONE,
) -> FlipSequence:
    """Drive the rectangulation to an end state using only segments between
    consecutive Y-or-margin points of a row (preferring the lowest, leftmost
    flip) and removals of verticals that carry no interior Y-point.

    A satisfied input can always move, so hitting a dead end raises
    StuckError with the witness pair.  Each row of k points costs k+1
    flips, for a total of |Y| + n <= 2|Y|.
    """
    sign = SIGN_FOR_ELBOWS.get(elbows)
    if sign is None:
        raise ValueError("elbows must be the empty set or a one-signed class")
    if not is_satisfied(Y.points, sign):
        raise ValueError(f"superset is not {sign.value}-satisfied")
    n = X.n
    board = Board(X)
    row_pts: dict[int, list[int]] = {}
    for y in range(1, n + 1):
        xs = [0, n + 1] + sorted(p.x for p in Y.points if p.y == y)
        row_pts[y] = sorted(xs)
    yset = Y.points
    steps: list[FlipStep] = []

    def first_flip() -> Optional[tuple[Point, Point]]:
        for y in range(1, n + 1):
            xs = row_pts[y]
            for x1, x2 in zip(xs, xs[1:]):
                if (x1, x2) in board.rows.get(y, []):
                    continue
                a, b = Point(x1, y), Point(x2, y)
                if not board.flip_violations(a, b, elbows):
                    return a, b
        return None

    def first_removal() -> Optional[Segment]:
        for x in sorted(board.cols):
            for s, e in board.cols[x]:
                if any(Point(x, yy) in yset for yy in range(s + 1, e)):
                    continue
                seg = Segment(Point(x, s), Point(x, e))
                if not board.removal_violations(seg, elbows):
                    return seg
        return None

    while not board.is_end_state():
        mv = first_flip()
        if mv is not None:
            board.apply_flip(*mv, elbows)
            steps.append(flip(*mv))
            continue
        seg = first_removal()
        if seg is not None:
            board.remove_segment(seg, elbows)
            steps.append(removal(seg.p, seg.q))
            continue
        raise StuckError(*_blocked_pair(board, row_pts, yset))
    fs = FlipSequence(X, tuple(steps))
    if fs.cost > 2 * Y.cost:
        raise AssertionError("flip count exceeded the two-per-point budget")
    return fs


def _blocked_pair(board: Board, row_pts: dict[int, list[int]], yset) -> tuple[Point, Point]:
    # the rightmost q (leftmost q' on ties) with [q, q'] missing
    best: Optional[tuple[Point, Point]] = None
    for y, xs in row_pts.items():
        for x1, x2 in zip(xs, xs[1:]):
            if (x1, x2) in board.rows.get(y, []):
                continue
            if best is None or x1 > best[0].x or (x1 == best[0].x and x2 < best[1].x):
                best = (Point(x1, y), Point(x2, y))
    assert best is not None
    return best


# ---------------------------------------------------------------------------
# tree relaxation -> flips


class InvariantViolation(TransformError):
    def __init__(self, name: str, detail: str):
        super().__init__(f"{name} violated: {detail}")
        self.name = name


@dataclass
class _RowTracker:
    """Live mirror of the relaxation: per-height row extents plus the
    current monotone tree, checked against the board after every step."""

    board: Board
    extents: dict[int, list[int]]
    parent: dict[Point, Point]
    children: dict[Point, list[Point]]

    def reparent(self, b: Point, a: Point) -> None:
        old = self.parent[b]
        self.children[old].remove(b)
        self.parent[b] = a
        self.children[a].append(b)
        self.children[a].sort()


def _check_i1(t: _RowTracker) -> None:
    for i, (lo, hi) in t.extents.items():
        ivs = t.board.rows.get(i, [])
        reach = lo
        for s, e in ivs:
            if s > reach:
                raise InvariantViolation("I1", f"row {i} has a gap at x={reach}")
            reach = max(reach, e)
        if not ivs or ivs[0][0] != lo or reach != hi:
            raise InvariantViolation("I1", f"row {i} does not span [{lo},{hi}]")


def _check_i2(t: _RowTracker, root: Point, n: int) -> None:
    if t.extents[root.y] != [0, n + 1]:
        raise InvariantViolation("I2", f"root row {root.y} does not span the frame")
    for par, kids in t.children.items():
        if not kids:
            continue
        lt, rt = t.extents[par.y]
        spans = [t.extents[k.y] for k in kids]
        if lt > spans[0][0]:
            raise InvariantViolation("I2", f"child row {kids[0].y} overhangs {par.y} on the left")
        if spans[-1][1] > rt:
            raise InvariantViolation("I2", f"child row {kids[-1].y} overhangs {par.y} on the right")
        for k1, k2, s1, s2 in zip(kids, kids[1:], spans, spans[1:]):
            if s1[1] != s2[0]:
                raise InvariantViolation(
                    "I2", f"sibling rows {k1.y} and {k2.y} are not aligned ({s1[1]} != {s2[0]})"
                )


def _column_covers(board: Board, x: int, y1: int, y2: int) -> bool:
    if y1 >= y2:
        return True
    if x in (0, board.n + 1):
        return True
    reach = y1
    for s, e in board.cols.get(x, []):
        if s <= reach < e:
            reach = e
        if reach >= y2:
            return True
    return reach >= y2


def _interior_clear(board: Board, x1: int, x2: int, y1: int, y2: int) -> bool:
    if x1 >= x2 or y1 >= y2:
        return True
    for c in range(x1 + 1, x2):
        for s, e in board.cols.get(c, []):
            if s < y2 and e > y1:
                return False
    for r in range(y1 + 1, y2):
        for s, e in board.rows.get(r, []):
            if s < x2 and e > x1:
                return False
    return True


def _check_i3(t: _RowTracker, n: int) -> None:
    for par, kids in t.children.items():
        if not kids:
            continue
        lt, rt = t.extents[par.y]
        rects = []
        rects.append((lt, t.extents[kids[0].y][0], par.y, n + 1))
        for k in kids:
            lo, hi = t.extents[k.y]
            rects.append((lo, hi, par.y, k.y))
        rects.append((t.extents[kids[-1].y][1], rt, par.y, n + 1))
        for x1, x2, y1, y2 in rects:
            if x1 >= x2:
                continue
            if not _interior_clear(t.board, x1, x2, y1, y2):
                raise InvariantViolation(
                    "I3", f"rectangle ({x1},{y1})-({x2},{y2}) under row {par.y} is crossed"
                )
            for side in (x1, x2):
                if not _column_covers(t.board, side, y1, y2):
                    raise InvariantViolation(
                        "I3", f"side x={side} of rectangle under row {par.y} is uncovered"
                    )


def _assert_invariants(t: _RowTracker, root: Point, n: int) -> None:
    _check_i1(t)
    _check_i2(t, root, n)
    _check_i3(t, n)


def treerelax_to_rect(
    X: PermutationPointSet,
    ef: Iterable[EdgeFlip],
    check_invariants: bool = True,
) -> FlipSequence:
    """Compile a treap-to-path relaxation into a flip run.

    Opening sweep rows the treap; each edge-flip costs one flip at the lower
    sibling's height plus, when the reparented row no longer aligns with its
    new neighbor, one realignment flip; the closing sweep extends every row
    to both margins and drains the remaining verticals.  The contiguity,
    nesting and visibility invariants are re-checked after every edge-flip
    when check_invariants is set.
    """
    board = Board(X)
    steps: list[FlipStep] = []
    extents = initial_phase(board, ELBOWS_NONE, steps)
    treap = build_treap(X)
    tracker = _RowTracker(
        board,
        extents,
        dict(treap.parent_map),
        {p: list(kids) for p, kids in treap.children.items()},
    )
    root = treap.root
    n = X.n
    if check_invariants:
        _assert_invariants(tracker, root, n)

    for f in ef:
        a, b = f.a, f.b
        if tracker.parent.get(a) != f.r or tracker.parent.get(b) != f.r:
            raise TransformError(f"edge-flip {f} does not match the current tree")
        kids = tracker.children[f.r]
        ia, ib = kids.index(a), kids.index(b)
        if abs(ia - ib) != 1 or not a.y < b.y:
            raise TransformError(f"edge-flip {f} is not between x-adjacent siblings")
        i, j = a.y, b.y
        li, ri = tracker.extents[i]
        lj, rj = tracker.extents[j]
        neighbors = tracker.children[a][:]  # a's children before adoption
        touched = set()
        if a.x < b.x:
            mv = (Point(ri, i), Point(rj, i))
            tracker.extents[i][1] = rj
        else:
            mv = (Point(lj, i), Point(li, i))
            tracker.extents[i][0] = lj
        touched.update((mv[0].x, mv[1].x))
        board.apply_flip(*mv, ELBOWS_NONE)
        steps.append(flip(*mv))
        tracker.reparent(b, a)
        if neighbors:
            k = neighbors[-1] if a.x < b.x else neighbors[0]
            kk = k.y
            lk, rk = tracker.extents[kk]
            lj, rj = tracker.extents[j]
            if a.x < b.x and rk < lj:
                if kk < j:
                    mv2 = (Point(rk, j), Point(lj, j))
                    tracker.extents[j][0] = rk
                else:
                    mv2 = (Point(rk, kk), Point(lj, kk))
                    tracker.extents[kk][1] = lj
                board.apply_flip(*mv2, ELBOWS_NONE)
                steps.append(flip(*mv2))
                touched.update((mv2[0].x, mv2[1].x))
            elif a.x > b.x and rj < lk:
                if kk < j:
                    mv2 = (Point(rj, j), Point(lk, j))
                    tracker.extents[j][1] = lk
                else:
                    mv2 = (Point(rj, kk), Point(lk, kk))
                    tracker.extents[kk][0] = rj
                board.apply_flip(*mv2, ELBOWS_NONE)
                steps.append(flip(*mv2))
                touched.update((mv2[0].x, mv2[1].x))
        # the row just extended over its old boundary wall; the pieces the
        # invariants no longer need are exactly the removable ones
        board.remove_all_possible(ELBOWS_NONE, columns=touched, record=steps)
        if check_invariants:
            _assert_invariants(tracker, root, n)

    if any(len(kids) > 1 for kids in tracker.children.values()):
        raise TransformError("edge-flip sequence does not end at the path")

    # closing sweep: extend rows to the margins bottom-up, draining freed
    # verticals before each flip, then drain whatever is left
    for i in range(1, n + 1):
        board.remove_all_possible(ELBOWS_NONE, record=steps)
        lo = tracker.extents[i][0]
        if lo > 0:
            board.apply_flip(Point(0, i), Point(lo, i), ELBOWS_NONE)
            steps.append(flip(Point(0, i), Point(lo, i)))
            tracker.extents[i][0] = 0
    for i in range(1, n + 1):
        board.remove_all_possible(ELBOWS_NONE, record=steps)
        hi = tracker.extents[i][1]
        if hi < n + 1:
            board.apply_flip(Point(hi, i), Point(n + 1, i), ELBOWS_NONE)
            steps.append(flip(Point(hi, i), Point(n + 1, i)))
            tracker.extents[i][1] = n + 1
    board.remove_all_possible(ELBOWS_NONE, record=steps)
    if not board.is_end_state():
        raise TransformError("closing sweep did not reach an end state")
    return FlipSequence(X, tuple(steps))


# ---------------------------------------------------------------------------
# A-operations -> flips


def a_op_to_flips(state: RectState, op: tuple) -> tuple[list[FlipStep], RectState]:
    """Simulate one A-operation by flips plus free removals: an A-rotate is
    one flip (add the pivoted segment, drop the old one), an A-flip is two.
    Returns the steps and the state they produce, which carries the same
    segment set as the direct application.
    """
    kind = op[0]
    if kind == "arotate":
        _, seg, pivot, far = op
        target = apply_a_rotate(state, seg, pivot, far)  # validates the op
        steps = [flip(pivot, far), removal(seg.p, seg.q)]
    elif kind == "aflip":
        _, seg1, seg2, v, w = op
        target = apply_a_flip(state, seg1, seg2, v, w)
        y = ({seg1.p, seg1.q} & {seg2.p, seg2.q}).pop()
        steps = [
            flip(v, y),
            flip(y, w),
            removal(seg1.p, seg1.q),
            removal(seg2.p, seg2.q),
        ]
    else:
        raise InvalidAOp(f"unknown A-operation {kind!r}")
    board = board_from_state(state)
    for step in steps:
        if step.kind == "flip":
            board.apply_flip(step.a, step.b, ELBOWS_NONE)
        else:
            board.remove_segment(step.segment, ELBOWS_NONE)
    result = board.snapshot()
    if result.segments != target.segments:
        raise AssertionError("flip simulation diverged from the direct A-operation")
    return steps, result
