"""Text formats for permutations, point sets, flip runs, edge-flip runs and
BST traces.  Parsers report the offending line number."""
from __future__ import annotations

from typing import Iterable, Optional

from .bst import BstOp, BstTrace, BstTree
from .geometry import PermutationPointSet, Point
from .rectangulation import FlipSequence, FlipStep, Segment
from .satisfied import PointSuperset
from .treerelax import EdgeFlip, build_treap


class ParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def format_permutation(X: PermutationPointSet) -> str:
    return ",".join(map(str, X.seq))


def parse_permutation(text: str, line_no: int = 1) -> PermutationPointSet:
    try:
        values = [int(tok) for tok in text.strip().split(",") if tok.strip() != ""]
        return PermutationPointSet(tuple(values))
    except ValueError as exc:
        raise ParseError(line_no, f"bad permutation {text.strip()!r}: {exc}") from exc


def _parse_point(tok: str, line_no: int) -> Point:
    parts = tok.split(",")
    if len(parts) != 2:
        raise ParseError(line_no, f"expected x,y, got {tok!r}")
    try:
        return Point(int(parts[0]), int(parts[1]))
    except ValueError as exc:
        raise ParseError(line_no, f"bad coordinate in {tok!r}") from exc


def format_point_set(points: Iterable[Point], cost: Optional[int] = None) -> str:
    lines = [] if cost is None else [f"# cost={cost}"]
    lines += [f"{p.x},{p.y}" for p in sorted(points)]
    return "\n".join(lines) + "\n"


def format_superset(Y: PointSuperset) -> str:
    return format_point_set(Y.points, cost=Y.cost)


def parse_point_set(text: str) -> list[Point]:
    points = []
    for i, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        points.append(_parse_point(line, i))
    return points


def parse_superset(text: str, X: PermutationPointSet) -> PointSuperset:
    pts = frozenset(parse_point_set(text))
    missing = X.points - pts
    if missing:
        raise ValueError(f"superset is missing input points {sorted(missing)}")
    return PointSuperset(X, pts - X.points)


# -- flip sequences ---------------------------------------------------------


def format_flip_sequence(fs: FlipSequence) -> str:
    lines = [f"X: {format_permutation(fs.x)}"]
    for s in fs.steps:
        lines.append(f"{s.kind} {s.a.x},{s.a.y} {s.b.x},{s.b.y}")
    return "\n".join(lines) + "\n"


def parse_flip_sequence(text: str) -> FlipSequence:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("X:"):
        raise ParseError(1, "expected a header line 'X: <permutation>'")
    x = parse_permutation(lines[0][2:], 1)
    steps = []
    for i, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in ("flip", "remove"):
            raise ParseError(i, f"expected 'flip x,y x,y' or 'remove x,y x,y', got {line!r}")
        steps.append(
            FlipStep(parts[0], _parse_point(parts[1], i), _parse_point(parts[2], i))
        )
    return FlipSequence(x, tuple(steps))


# -- edge-flip sequences ------------------------------------------------------


def format_edge_flips(X: PermutationPointSet, flips: Iterable[EdgeFlip]) -> str:
    lines = [f"X: {format_permutation(X)}"]
    for f in flips:
        lines.append(f"eflip {f.a.x},{f.a.y} {f.b.x},{f.b.y}")
    return "\n".join(lines) + "\n"


def parse_edge_flips(text: str) -> tuple[PermutationPointSet, list[EdgeFlip]]:
    """Read an edge-flip run; the shared parent of each flip is recovered by
    replaying from the treap, so an inconsistent run fails here."""
    from .treerelax import apply_edge_flip  # local import to avoid a cycle at import time

    lines = text.splitlines()
    if not lines or not lines[0].startswith("X:"):
        raise ParseError(1, "expected a header line 'X: <permutation>'")
    x = parse_permutation(lines[0][2:], 1)
    tree = build_treap(x)
    out: list[EdgeFlip] = []
    for i, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] != "eflip":
            raise ParseError(i, f"expected 'eflip x,y x,y', got {line!r}")
        a, b = _parse_point(parts[1], i), _parse_point(parts[2], i)
        r = tree.parent_map.get(b)
        if r is None or tree.parent_map.get(a) != r:
            raise ParseError(i, f"eflip {a} {b} does not join siblings in the current tree")
        f = EdgeFlip(a, b, r)
        try:
            tree = apply_edge_flip(tree, f)
        except ValueError as exc:
            raise ParseError(i, str(exc)) from exc
        out.append(f)
    return x, out


# -- A-operation scripts ------------------------------------------------------


def format_a_ops(X: PermutationPointSet, ops: Iterable[tuple]) -> str:
    lines = [f"X: {format_permutation(X)}"]
    for op in ops:
        if op[0] == "arotate":
            _, seg, pivot, far = op
            lines.append(
                f"arotate {seg.p.x},{seg.p.y} {seg.q.x},{seg.q.y} "
                f"{pivot.x},{pivot.y} {far.x},{far.y}"
            )
        else:
            _, s1, s2, v, w = op
            shared = ({s1.p, s1.q} & {s2.p, s2.q}).pop()
            ends = ({s1.p, s1.q} | {s2.p, s2.q}) - {shared}
            e1, e2 = sorted(ends)
            lines.append(
                f"aflip {e1.x},{e1.y} {shared.x},{shared.y} {e2.x},{e2.y} "
                f"{v.x},{v.y} {w.x},{w.y}"
            )
    return "\n".join(lines) + "\n"


def parse_a_ops(text: str) -> tuple[PermutationPointSet, list[tuple]]:
    """A-operation script: 'arotate p q pivot far' pivots segment [p,q], and
    'aflip e1 shared e2 v w' re-hangs [e1,shared] and [shared,e2] onto the
    perpendicular endpoints v, w."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("X:"):
        raise ParseError(1, "expected a header line 'X: <permutation>'")
    x = parse_permutation(lines[0][2:], 1)
    ops: list[tuple] = []
    for i, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "arotate" and len(parts) == 5:
                p, q, pivot, far = (_parse_point(t, i) for t in parts[1:])
                ops.append(("arotate", Segment.make(p, q), pivot, far))
            elif parts[0] == "aflip" and len(parts) == 6:
                e1, shared, e2, v, w = (_parse_point(t, i) for t in parts[1:])
                ops.append(("aflip", Segment.make(e1, shared), Segment.make(shared, e2), v, w))
            else:
                raise ParseError(i, f"expected an arotate/aflip line, got {line!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(i, str(exc)) from exc
    return x, ops


# -- BST traces ---------------------------------------------------------------


def format_tree(tree: BstTree) -> str:
    def fmt(k) -> str:
        if k is None:
            return "."
        return f"({fmt(tree.left.get(k))} {k} {fmt(tree.right.get(k))})"

    return fmt(tree.root)


def parse_tree(text: str, line_no: int = 1) -> BstTree:
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def take() -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError(line_no, "unexpected end of tree expression")
        tok = tokens[pos]
        pos += 1
        return tok

    left: dict = {}
    right: dict = {}

    def node() -> Optional[int]:
        tok = take()
        if tok == ".":
            return None
        if tok != "(":
            raise ParseError(line_no, f"expected '(' or '.', got {tok!r}")
        l = node()
        key_tok = take()
        try:
            key = int(key_tok)
        except ValueError:
            raise ParseError(line_no, f"expected a key, got {key_tok!r}")
        r = node()
        if take() != ")":
            raise ParseError(line_no, "expected ')'")
        if l is not None:
            left[key] = l
        if r is not None:
            right[key] = r
        return key

    root = node()
    if pos != len(tokens):
        raise ParseError(line_no, "trailing tokens after the tree expression")
    if root is None:
        raise ParseError(line_no, "empty tree")
    try:
        return BstTree(root, left, right)
    except ValueError as exc:
        raise ParseError(line_no, str(exc)) from exc


def format_bst_trace(trace: BstTrace) -> str:
    lines = [f"tree: {format_tree(trace.initial_tree)}"]
    for ep in trace.episodes:
        lines.append(" ".join(op.token for op in ep))
    return "\n".join(lines) + "\n"


def parse_bst_trace(text: str) -> BstTrace:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("tree:"):
        raise ParseError(1, "expected a header line 'tree: <shape>'")
    tree = parse_tree(lines[0][len("tree:") :].strip(), 1)
    episodes = []
    for i, line in enumerate(lines[1:], start=2):
        if line.strip().startswith("#"):
            continue
        try:
            episodes.append(tuple(BstOp.from_token(tok) for tok in line.split()))
        except ValueError as exc:
            raise ParseError(i, str(exc)) from exc
    while episodes and episodes[-1] == () and len(episodes) > len(tree.keys()):
        episodes.pop()
    return BstTrace(tree, tuple(episodes))
