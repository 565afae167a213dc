"""Reference median filters that maintain the sliding window directly.

naive   copy and sort every window (ground-truth oracle)
move    sorted array; binary search plus a block memmove per step
tree    two balanced search trees (AVL) holding the lower h+1 and upper h elements
heap    double heap indexed by circular-buffer slot; replace-then-sift
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .core import as_samples, check_window


def _prepare(x, k):
    check_window(k)
    arr = np.ascontiguousarray(as_samples(x))
    n = arr.shape[0]
    return arr, n, max(0, n - k + 1)


def naive_median_filter(x, k: int) -> np.ndarray:
    arr, n, m = _prepare(x, k)
    out = np.empty(m, dtype=arr.dtype)
    if m:
        _kernels.naive_median(arr, k, out)
    return out


def move_median_filter(x, k: int) -> np.ndarray:
    arr, n, m = _prepare(x, k)
    out = np.empty(m, dtype=arr.dtype)
    if m:
        _kernels.move_median(arr, k, out)
    return out


def heap_median_filter(x, k: int, *, check: bool = False) -> np.ndarray:
    """Double-heap filter; ``check`` verifies heap order and slot index after each step."""
    arr, n, m = _prepare(x, k)
    out = np.empty(m, dtype=arr.dtype)
    if m:
        _kernels.heap_median(arr, k, out, check)
    return out


class _Node:
    __slots__ = ("key", "left", "right", "height")

    def __init__(self, key):
        self.key = key
        self.left = None
        self.right = None
        self.height = 1


def _h(node):
    return node.height if node is not None else 0


def _fix(node):
    node.height = 1 + max(_h(node.left), _h(node.right))


def _rotate_right(node):
    top = node.left
    node.left = top.right
    top.right = node
    _fix(node)
    _fix(top)
    return top


def _rotate_left(node):
    top = node.right
    node.right = top.left
    top.left = node
    _fix(node)
    _fix(top)
    return top


def _balance(node):
    _fix(node)
    bf = _h(node.left) - _h(node.right)
    if bf > 1:
        if _h(node.left.left) < _h(node.left.right):
            node.left = _rotate_left(node.left)
        return _rotate_right(node)
    if bf < -1:
        if _h(node.right.right) < _h(node.right.left):
            node.right = _rotate_right(node.right)
        return _rotate_left(node)
    return node


def _insert(node, key):
    if node is None:
        return _Node(key)
    if key < node.key:
        node.left = _insert(node.left, key)
    else:
        node.right = _insert(node.right, key)
    return _balance(node)


def _pop_min(node):
    if node.left is None:
        return node.right, node.key
    node.left, key = _pop_min(node.left)
    return _balance(node), key


def _delete(node, key):
    if node is None:
        raise KeyError(key)
    if key < node.key:
        node.left = _delete(node.left, key)
    elif node.key < key:
        node.right = _delete(node.right, key)
    else:
        if node.left is None:
            return node.right
        if node.right is None:
            return node.left
        node.right, node.key = _pop_min(node.right)
    return _balance(node)


class AVLMultiset:
    """Ordered set of unique keys; duplicates of a value are told apart by slot."""

    __slots__ = ("root", "size")

    def __init__(self, keys=()):
        self.root = None
        self.size = 0
        for key in keys:
            self.add(key)

    def __len__(self):
        return self.size

    def add(self, key):
        self.root = _insert(self.root, key)
        self.size += 1

    def remove(self, key):
        self.root = _delete(self.root, key)
        self.size -= 1

    def min(self):
        node = self.root
        while node.left is not None:
            node = node.left
        return node.key

    def max(self):
        node = self.root
        while node.right is not None:
            node = node.right
        return node.key

    def keys(self):
        out, stack, node = [], [], self.root
        while stack or node is not None:
            while node is not None:
                stack.append(node)
                node = node.left
            node = stack.pop()
            out.append(node.key)
            node = node.right
        return out

    def is_balanced(self) -> bool:
        def walk(node):
            if node is None:
                return 0
            lh, rh = walk(node.left), walk(node.right)
            if lh < 0 or rh < 0 or abs(lh - rh) > 1 or node.height != 1 + max(lh, rh):
                return -1
            return 1 + max(lh, rh)

        return walk(self.root) >= 0


def tree_median_filter(x, k: int, *, check: bool = False) -> np.ndarray:
    arr, n, m = _prepare(x, k)
    out = np.empty(m, dtype=arr.dtype)
    if not m:
        return out
    h = k // 2
    vals = arr.tolist()
    first = sorted((vals[t], t) for t in range(k))
    lower = AVLMultiset(first[: h + 1])
    upper = AVLMultiset(first[h + 1:])
    out[0] = lower.max()[0]
    for t in range(k, n):
        slot = t % k
        old = (vals[t - k], slot)
        new = (vals[t], slot)
        if old <= lower.max():
            lower.remove(old)
        else:
            upper.remove(old)
        if len(lower) and new < lower.max():
            lower.add(new)
        else:
            upper.add(new)
        if len(lower) > h + 1:
            key = lower.max()
            lower.remove(key)
            upper.add(key)
        elif len(lower) < h + 1:
            key = upper.min()
            upper.remove(key)
            lower.add(key)
        if check:
            assert len(lower) == h + 1 and len(upper) == h
            assert lower.is_balanced() and upper.is_balanced()
            assert not len(upper) or lower.max() < upper.min()
        out[t - k + 1] = lower.max()[0]
    return out
