"""Block data structure: one sorted block as a doubly-linked list over index arrays.

This is the readable, instrumented implementation.  Every operation keeps a
running count of array cells it touches (``cells``) so the linear-work claim
of the postprocessing phase can be measured; ``check_invariants`` walks the
list and verifies the structural invariants.

Node ``k`` is both head and tail of the list and carries the +INF value, so
``alpha[k]`` is the "first large element" once every element is small.
Deletions and undeletions must be properly nested (LIFO); the structure does
not detect violations unless ``check_invariants`` is called.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import INF


class InvariantViolation(AssertionError):
    pass


@dataclass(frozen=True)
class DebugWindowView:
    small_set: frozenset
    list_set: frozenset


class BlockState:
    __slots__ = ("alpha", "pi", "prev", "next", "m", "s", "k", "h", "offset", "cells")

    def __init__(self, alpha: Sequence, pi: Sequence[int], offset: int = 0):
        k = len(alpha)
        self.k = k
        self.h = (k - 1) // 2
        self.alpha = list(alpha) + [INF]
        self.pi = [int(q) for q in pi]
        self.offset = offset
        self.prev = [0] * (k + 1)
        self.next = [0] * (k + 1)
        self.cells = 0
        nxt, prv = self.next, self.prev
        p = k
        for q in self.pi:
            nxt[p] = q
            prv[q] = p
            p = q
        nxt[p] = k
        prv[k] = p
        self.s = self.h
        self.m = self.pi[self.h]
        self.cells += 3 * k + 3

    def _is_small(self, i: int) -> bool:
        # (alpha[i], i) < (alpha[m], m); node k holds INF so m == k is handled
        alpha, m = self.alpha, self.m
        self.cells += 2
        return (alpha[i], i) < (alpha[m], m)

    def delete(self, i: int) -> None:
        was_small = self._is_small(i)
        nxt, prv = self.next, self.prev
        p, q = prv[i], nxt[i]
        nxt[p] = q
        prv[q] = p
        self.cells += 4
        if was_small:
            self.s -= 1
            return
        if self.m == i:
            self.m = nxt[self.m]
            self.cells += 1
        if self.s > 0:
            self.m = prv[self.m]
            self.s -= 1
            self.cells += 1

    def undelete(self, i: int) -> None:
        nxt, prv = self.next, self.prev
        nxt[prv[i]] = i
        prv[nxt[i]] = i
        self.cells += 4
        if self._is_small(i):
            self.m = prv[self.m]
            self.cells += 1

    def unwind(self) -> None:
        nxt, prv = self.next, self.prev
        for i in range(self.k - 1, -1, -1):
            p, q = prv[i], nxt[i]
            nxt[p] = q
            prv[q] = p
        self.cells += 4 * self.k
        self.m = self.k
        self.s = 0

    def advance(self) -> None:
        self.m = self.next[self.m]
        self.s += 1
        self.cells += 1

    def small(self) -> int:
        return self.s

    def peek(self):
        self.cells += 1
        return self.alpha[self.m]

    @property
    def exhausted(self) -> bool:
        """Cursor sits on the list-end node (all listed elements are small)."""
        return self.m == self.k

    # -- introspection, not part of the counted interface --

    def listed(self) -> list[int]:
        out = []
        nxt, k = self.next, self.k
        p = nxt[k]
        while p != k:
            out.append(p)
            p = nxt[p]
            if len(out) > k:
                raise InvariantViolation("next-pointer walk does not return to the head")
        return out

    def small_indexes(self) -> list[int]:
        out = []
        nxt, p = self.next, self.next[self.k]
        for _ in range(self.s):
            out.append(p)
            p = nxt[p]
        return out

    def key(self, i: int):
        return (self.alpha[i], self.offset + i)

    def view(self) -> DebugWindowView:
        listed = self.listed()
        return DebugWindowView(
            small_set=frozenset(self.key(i) for i in listed[: self.s]),
            list_set=frozenset(self.key(i) for i in listed),
        )

    def snapshot(self) -> tuple:
        return (tuple(self.prev), tuple(self.next), self.m, self.s)

    def check_invariants(self) -> int:
        """Verify list structure, sortedness and the cursor; return the list length."""
        k, nxt, prv, alpha, s = self.k, self.next, self.prev, self.alpha, self.s
        p, q, c = k, nxt[k], 0
        ap = None
        expect_m = k
        while q != k:
            if prv[q] != p:
                raise InvariantViolation(f"prev[{q}] = {prv[q]}, expected {p}")
            # (alpha[p], p) < (alpha[q], q); indexes are distinct
            aq = alpha[q]
            if c and not (ap < aq or (ap == aq and p < q)):
                raise InvariantViolation(f"list not sorted at indexes {p}, {q}")
            if c == s:
                expect_m = q
            p, ap = q, aq
            q = nxt[q]
            c += 1
            if c > k:
                raise InvariantViolation("next-pointer walk does not return to the head")
        if prv[k] != p:
            raise InvariantViolation(f"prev[{k}] = {prv[k]}, expected {p}")
        if not 0 <= s <= c:
            raise InvariantViolation(f"counter out of range: s={s}, c={c}, k={k}")
        if self.m != expect_m:
            raise InvariantViolation(f"cursor m={self.m}, expected {expect_m} (s={s})")
        return c


def construct(alpha: Sequence, pi: Sequence[int], offset: int = 0) -> BlockState:
    return BlockState(alpha, pi, offset)
