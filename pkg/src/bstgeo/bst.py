"""Pointer-machine BST model: trace validation and a balanced-tree baseline.

A trace consists of an initial search tree over [n] and one op episode per
access.  The pointer starts at the root; moveleft/moveright/moveup walk the
tree, rotate lifts the pointed node over its parent (the pointer stays on
the node).  Every episode must finish with the accessed element at the root
and the pointer on it.  Cost is the total op count.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .geometry import PermutationPointSet


class BstOp(Enum):
    MOVELEFT = "moveleft"
    MOVERIGHT = "moveright"
    MOVEUP = "moveup"
    ROTATE = "rotate"

    @property
    def token(self) -> str:
        return {"moveleft": "L", "moveright": "R", "moveup": "U", "rotate": "rot"}[self.value]

    @classmethod
    def from_token(cls, tok: str) -> "BstOp":
        table = {"L": cls.MOVELEFT, "R": cls.MOVERIGHT, "U": cls.MOVEUP, "rot": cls.ROTATE}
        if tok not in table:
            raise ValueError(f"unknown op token {tok!r}")
        return table[tok]


class TraceError(ValueError):
    """An op sequence that the pointer machine cannot execute or that breaks
    the access contract."""


@dataclass(frozen=True)
class BstTree:
    """Shape of a binary search tree over [n], as parent-free child maps."""

    root: int
    left: dict
    right: dict

    def __post_init__(self) -> None:
        if not self.is_search_tree():
            raise ValueError("shape violates the symmetric order property")

    def keys(self) -> list[int]:
        out: list[int] = []
        stack = [self.root]
        while stack:
            k = stack.pop()
            out.append(k)
            for child in (self.left.get(k), self.right.get(k)):
                if child is not None:
                    stack.append(child)
        return out

    def inorder(self) -> list[int]:
        out: list[int] = []
        stack: list[int] = []
        k: Optional[int] = self.root
        while stack or k is not None:
            while k is not None:
                stack.append(k)
                k = self.left.get(k)
            k = stack.pop()
            out.append(k)
            k = self.right.get(k)
        return out

    def is_search_tree(self) -> bool:
        seq = self.inorder()
        return seq == sorted(seq) and len(set(seq)) == len(seq)

    def depth(self, key: int) -> int:
        d = 0
        k = self.root
        while k != key:
            k = self.left.get(k) if key < k else self.right.get(k)
            if k is None:
                raise KeyError(key)
            d += 1
        return d


def balanced_tree(n: int) -> BstTree:
    """Midpoint-recursive balanced tree over 1..n."""
    left: dict[int, int] = {}
    right: dict[int, int] = {}

    def build(lo: int, hi: int) -> Optional[int]:
        if lo > hi:
            return None
        mid = (lo + hi) // 2
        l, r = build(lo, mid - 1), build(mid + 1, hi)
        if l is not None:
            left[mid] = l
        if r is not None:
            right[mid] = r
        return mid

    root = build(1, n)
    assert root is not None
    return BstTree(root, left, right)


@dataclass(frozen=True)
class BstTrace:
    initial_tree: BstTree
    episodes: tuple[tuple[BstOp, ...], ...]

    @property
    def cost(self) -> int:
        return sum(len(ep) for ep in self.episodes)


class _Machine:
    """Mutable pointer machine over a tree shape."""

    def __init__(self, tree: BstTree):
        self.left = dict(tree.left)
        self.right = dict(tree.right)
        self.parent: dict[int, int] = {}
        for k, v in self.left.items():
            self.parent[v] = k
        for k, v in self.right.items():
            self.parent[v] = k
        self.root = tree.root
        self.pointer = tree.root
        self.ops_done = 0

    def snapshot(self) -> BstTree:
        return BstTree(self.root, dict(self.left), dict(self.right))

    def assert_search_tree(self) -> None:
        if not self.snapshot().is_search_tree():
            raise TraceError("intermediate tree violates the search-tree property")

    def apply(self, op: BstOp) -> None:
        self.ops_done += 1
        p = self.pointer
        if op is BstOp.MOVELEFT:
            child = self.left.get(p)
            if child is None:
                raise TraceError(f"moveleft at {p}: no left child")
            self.pointer = child
        elif op is BstOp.MOVERIGHT:
            child = self.right.get(p)
            if child is None:
                raise TraceError(f"moveright at {p}: no right child")
            self.pointer = child
        elif op is BstOp.MOVEUP:
            up = self.parent.get(p)
            if up is None:
                raise TraceError(f"moveup at {p}: already at the root")
            self.pointer = up
        else:
            self._rotate(p)

    def _rotate(self, v: int) -> None:
        p = self.parent.get(v)
        if p is None:
            raise TraceError(f"rotate at {v}: node has no parent")
        g = self.parent.get(p)
        if self.left.get(p) == v:
            t = self.right.get(v)
            if t is None:
                self.left.pop(p, None)
            else:
                self.left[p] = t
                self.parent[t] = p
            self.right[v] = p
        else:
            t = self.left.get(v)
            if t is None:
                self.right.pop(p, None)
            else:
                self.right[p] = t
                self.parent[t] = p
            self.left[v] = p
        self.parent[p] = v
        if g is None:
            self.root = v
            self.parent.pop(v, None)
        else:
            if self.left.get(g) == p:
                self.left[g] = v
            else:
                self.right[g] = v
            self.parent[v] = g
        # pointer stays on the rotated node

    def path_from_root(self, key: int) -> list[int]:
        path = []
        k = self.root
        while k != key:
            path.append(k)
            k = self.left.get(k) if key < k else self.right.get(k)
            if k is None:
                raise TraceError(f"key {key} not reachable by search")
        return path

    def step_toward(self, target: int) -> BstOp:
        p = self.pointer
        if target < p:
            return BstOp.MOVELEFT
        if target > p:
            return BstOp.MOVERIGHT
        raise AssertionError("already there")


def validate_trace(trace: BstTrace, X: PermutationPointSet) -> int:
    """Run the pointer machine over the trace and return its cost.

    Raises TraceError on any illegal op or when an episode does not end with
    the accessed element at the root and the pointer on it.
    """
    if len(trace.episodes) != X.n:
        raise TraceError(f"expected {X.n} episodes, got {len(trace.episodes)}")
    machine = _Machine(trace.initial_tree)
    if sorted(trace.initial_tree.keys()) != list(range(1, X.n + 1)):
        raise TraceError("initial tree is not over [n]")
    for i, xi in enumerate(X.seq, start=1):
        for op in trace.episodes[i - 1]:
            machine.apply(op)
        if machine.root != xi:
            raise TraceError(f"episode {i}: {xi} is not at the root")
        if machine.pointer != machine.root:
            raise TraceError(f"episode {i}: pointer is not at the root")
        machine.assert_search_tree()
    return machine.ops_done


def balanced_bst_trace(X: PermutationPointSet, restore: bool = False) -> BstTrace:
    """Serve X from a balanced tree.

    By default each accessed element is rotated to the root and left there
    (the next access starts from the new root).  With restore=True the
    previous access's rotations are undone at the start of the following
    episode, keeping the balanced shape; that roughly doubles the op count,
    since each undo needs two pointer moves.
    """
    tree = balanced_tree(X.n)
    machine = _Machine(tree)
    episodes: list[tuple[BstOp, ...]] = []
    pending_undo: list[int] = []  # ancestors of the previous access, root first

    def emit(ops: list[BstOp], op: BstOp) -> None:
        machine.apply(op)
        ops.append(op)

    for xi in X.seq:
        ops: list[BstOp] = []
        if restore and pending_undo:
            # Undo the previous rotations in reverse: each former ancestor is
            # lifted back over the previously accessed node.
            prev = machine.root
            for j, anc in enumerate(pending_undo):
                if j > 0:
                    emit(ops, machine.step_toward(prev))
                emit(ops, machine.step_toward(anc))
                emit(ops, BstOp.ROTATE)
            pending_undo = []
            # climb back to the root before descending
            while machine.pointer != machine.root:
                emit(ops, BstOp.MOVEUP)
        path = machine.path_from_root(xi)
        for _ in path:
            emit(ops, machine.step_toward(xi))
        for _ in path:
            emit(ops, BstOp.ROTATE)
        if restore:
            pending_undo = path
        episodes.append(tuple(ops))
    return BstTrace(tree, tuple(episodes))


def static_balanced_cost(X: PermutationPointSet) -> int:
    return balanced_bst_trace(X).cost
