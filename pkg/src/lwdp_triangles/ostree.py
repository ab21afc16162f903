"""Order-statistic tree: ordered integer multiset with rank/select and prefix sums.

Treap-based; every node carries its subtree size and subtree key-sum, so
insert, delete, select-k-th, rank, and prefix-sum-of-k-smallest all run in
O(log size).  Priorities come from a per-tree seeded stream, keeping runs
deterministic.
"""

from __future__ import annotations

import random
from typing import Iterable


class _Node:
    __slots__ = ("key", "prio", "size", "total", "left", "right")

    def __init__(self, key: int, prio: float):
        self.key = key
        self.prio = prio
        self.size = 1
        self.total = key
        self.left: _Node | None = None
        self.right: _Node | None = None


def _size(n: _Node | None) -> int:
    return n.size if n is not None else 0


def _total(n: _Node | None) -> int:
    return n.total if n is not None else 0


def _pull(n: _Node) -> _Node:
    n.size = 1 + _size(n.left) + _size(n.right)
    n.total = n.key + _total(n.left) + _total(n.right)
    return n


def _merge(a: _Node | None, b: _Node | None) -> _Node | None:
    if a is None:
        return b
    if b is None:
        return a
    if a.prio > b.prio:
        a.right = _merge(a.right, b)
        return _pull(a)
    b.left = _merge(a, b.left)
    return _pull(b)


def _split_le(n: _Node | None, key: int) -> tuple[_Node | None, _Node | None]:
    """(subtree with keys <= key, subtree with keys > key)."""
    if n is None:
        return None, None
    if n.key <= key:
        mid, right = _split_le(n.right, key)
        n.right = mid
        return _pull(n), right
    left, mid = _split_le(n.left, key)
    n.left = mid
    return left, _pull(n)


class OrderStatTree:
    """Multiset of integers with O(log n) order statistics and prefix key-sums."""

    def __init__(self, items: Iterable[int] = ()):
        self._root: _Node | None = None
        self._rand = random.Random(0x5DEECE66D)
        for item in items:
            self.insert(item)

    def __len__(self) -> int:
        return _size(self._root)

    @property
    def size(self) -> int:
        return _size(self._root)

    @property
    def key_sum(self) -> int:
        return _total(self._root)

    def insert(self, key: int) -> None:
        left, right = _split_le(self._root, key)
        self._root = _merge(_merge(left, _Node(int(key), self._rand.random())), right)

    def remove(self, key: int) -> None:
        """Remove one occurrence of key; KeyError if absent."""
        left, rest = _split_le(self._root, key - 1)
        eq, right = _split_le(rest, key)
        if eq is None:
            self._root = _merge(left, right)
            raise KeyError(key)
        eq = _merge(eq.left, eq.right)  # drop one occurrence (the root of the equal run)
        self._root = _merge(_merge(left, eq), right)

    def select(self, k: int) -> int:
        """k-th smallest key, 1-indexed; select(0) is the sentinel 0."""
        if k == 0:
            return 0
        if not (1 <= k <= self.size):
            raise IndexError(f"rank {k} out of range for size {self.size}")
        node = self._root
        while node is not None:
            ls = _size(node.left)
            if k <= ls:
                node = node.left
            elif k == ls + 1:
                return node.key
            else:
                k -= ls + 1
                node = node.right
        raise AssertionError("unreachable")

    def prefix_sum(self, k: int) -> int:
        """Sum of the k smallest keys; prefix_sum(0) = 0."""
        if k == 0:
            return 0
        if not (1 <= k <= self.size):
            raise IndexError(f"rank {k} out of range for size {self.size}")
        node = self._root
        acc = 0
        while node is not None and k > 0:
            ls = _size(node.left)
            if k <= ls:
                node = node.left
            else:
                acc += _total(node.left) + node.key
                k -= ls + 1
                node = node.right
        return acc

    def rank(self, key: int) -> int:
        """Number of stored keys strictly less than key."""
        node = self._root
        acc = 0
        while node is not None:
            if key <= node.key:
                node = node.left
            else:
                acc += _size(node.left) + 1
                node = node.right
        return acc

    def count(self, key: int) -> int:
        return self.rank(key + 1) - self.rank(key)

    def min(self) -> int:
        return self.select(1)

    def to_sorted_list(self) -> list[int]:
        out: list[int] = []
        stack: list[tuple[_Node, bool]] = [(self._root, False)] if self._root else []
        while stack:
            node, visited = stack.pop()
            if visited:
                out.append(node.key)
                continue
            if node.right is not None:
                stack.append((node.right, False))
            stack.append((node, True))
            if node.left is not None:
                stack.append((node.left, False))
        return out
