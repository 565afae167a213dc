"""Sorting-based median filter: pad, sort each block, merge consecutive blocks.

The input is cut into blocks of length k.  Each block is sorted once
(``piecewise_sort``); the medians of all windows that straddle blocks j-1
and j are then produced in O(k) time by deleting block j-1's elements from
its sorted list while rebuilding block j's sorted list by undoing deletions
(``postprocess``).

Two postprocess engines share the same algorithm: a compiled kernel used by
default, and ``postprocess_reference`` built on ``medfilt.block.BlockState``
which can audit the small-set invariant at every output and count array
accesses.  Setting ``MEDFILT_DEBUG_INVARIANTS=1`` routes ``median_filter``
through the audited engine.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .block import BlockState, InvariantViolation
from .core import INF, NEG_INF, WindowSpec, as_samples, check_window, make_window_spec

_INT63 = 2**63


@dataclass(frozen=True)
class FilterInput:
    x: np.ndarray
    spec: WindowSpec
    # padding positions hold the dtype maximum; ties are broken by index, so
    # they rank above every real sample exactly like +INF
    padded: np.ndarray

    def reference_values(self) -> list:
        vals = self.x.tolist()
        return vals + [INF] * (self.spec.padded_length - self.spec.n)


def debug_enabled() -> bool:
    return os.environ.get("MEDFILT_DEBUG_INVARIANTS", "").strip().lower() in ("1", "true", "yes", "on")


def pad_to_blocks(x: np.ndarray, spec: WindowSpec) -> FilterInput:
    padded = np.full(spec.padded_length, np.iinfo(x.dtype).max, dtype=x.dtype)
    padded[: spec.n] = x
    return FilterInput(x=x, spec=spec, padded=padded)


def piecewise_sort(inp: FilterInput) -> np.ndarray:
    """Return a (b, k) array whose row j stably sorts block j.

    When the value range allows it, each (value, index) pair is packed into a
    single unique int64 key; otherwise blocks are sorted by value and runs of
    equal values are put back in index order.
    """
    spec, x = inp.spec, inp.x
    b, k, n = spec.b, spec.k, spec.n
    lo, hi = int(x.min()), int(x.max())
    if (hi - lo + 2) * k < _INT63:
        keys = np.empty(b * k, dtype=np.int64)
        _kernels.pack_keys(x, k, lo, hi + 1 - lo, keys)
        return np.argsort(keys.reshape(b, k), axis=1)
    blocks = inp.padded.reshape(b, k)
    perm = np.argsort(blocks, axis=1)
    _kernels.repair_ties(blocks, perm)
    return perm


def postprocess(inp: FilterInput, perms: np.ndarray) -> np.ndarray:
    spec = inp.spec
    out = np.empty(spec.padded_length - spec.k + 1, dtype=inp.padded.dtype)
    _kernels.sort_median_postprocess(inp.padded, np.ascontiguousarray(perms), spec.k, out)
    return out[: spec.output_length]


# Case labels for one inner-loop step, in terms of the critical elements:
# a = element deleted from A / undeleted into B, p = largest small element,
# q = smallest large element (before the step).  Cases 1-4 have a_A small,
# 5-8 have a_A large; case 8 (p_B < a_B < p_A) is the one where B, not A,
# receives the advance although a_B lands above p_B.
CASES = {
    0: "S_A empty",
    1: "a_A<=p_A, a_B<p_B",
    2: "a_A<=p_A, p_B<a_B<min(q_A,q_B)",
    3: "a_A<=p_A, q_B<min(q_A,a_B)",
    4: "a_A<=p_A, q_A<min(q_B,a_B)",
    5: "p_A<a_A, max(p_A,p_B)<a_B",
    6: "p_A<a_A, a_B<p_B<p_A",
    7: "p_A<a_A, max(a_B,p_A)<p_B",
    8: "p_A<a_A, p_B<a_B<p_A",
}

_BOTTOM = (NEG_INF, -1)
_TOP = (INF, float("inf"))


@dataclass
class PostprocessStats:
    cells: int = 0
    checks: int = 0
    cases: Counter = field(default_factory=Counter)


class _Auditor:
    """Checks the small-set invariant and the per-step case predictions."""

    def __init__(self, inp: FilterInput, stats: PostprocessStats):
        spec = inp.spec
        self.k, self.h = spec.k, spec.h
        self.stats = stats
        self.deep = spec.k <= 128
        order = np.argsort(inp.padded, kind="stable")
        self.rank = np.empty_like(order)
        self.rank[order] = np.arange(order.size)
        # small sets seen at the end of the previous step, keyed by block identity
        self._last = None

    @staticmethod
    def _smalls(blk: BlockState) -> set:
        return {blk.offset + i for i in blk.small_indexes()}

    def window(self, a: BlockState | None, b: BlockState, start: int, sets=None) -> None:
        k, h = self.k, self.h
        sa = a.s if a is not None else 0
        if sa + b.s != h:
            raise InvariantViolation(f"window {start}: s_A + s_B = {sa + b.s}, expected {h}")
        if sets is None:
            sets = (self._smalls(a) if a is not None else set(), self._smalls(b))
        small = sets[0] | sets[1]
        if h:
            w = self.rank[start:start + k]
            thr = np.partition(w, h - 1)[h - 1]
            expect = set((start + np.flatnonzero(w <= thr)).tolist())
        else:
            expect = set()
        if small != expect:
            raise InvariantViolation(
                f"window {start}: small elements {sorted(small)} are not the {h} smallest {sorted(expect)}"
            )
        if self.deep:
            if a is not None:
                a.check_invariants()
            b.check_invariants()
        self.stats.checks += 1

    def before(self, a: BlockState, b: BlockState, i: int) -> None:
        last = self._last
        if last is not None and last[0] is a and last[1] is b:
            self.sa, self.sb = last[2], last[3]
        else:
            self.sa, self.sb = self._smalls(a), self._smalls(b)
        aa, ab = a.key(i), b.key(i)
        pa = a.key(a.prev[a.m]) if a.s else _BOTTOM
        qa = a.key(a.m) if not a.exhausted else _TOP
        pb = b.key(b.prev[b.m]) if b.s else _BOTTOM
        qb = b.key(b.m) if not b.exhausted else _TOP
        if not self.sa:
            case = 0
        elif aa <= pa:
            if ab < pb:
                case = 1
            elif ab < min(qa, qb):
                case = 2
            elif qb < qa:
                case = 3
            else:
                case = 4
        elif ab < pb:
            case = 6 if pb < pa else 7
        else:
            case = 5 if pa < ab else 8
        self.case = case
        g = {name: key[1] for name, key in (("aA", aa), ("pA", pa), ("qA", qa), ("aB", ab), ("pB", pb), ("qB", qb))}
        sa, sb = self.sa, self.sb
        if case == 0:
            dot_b = (sb - {g["pB"]}) | {g["aB"]} if ab < pb else set(sb)
            self.expect = (set(), dot_b, set(), dot_b)
        elif case in (1, 2, 3, 4):
            dot_a = sa - {g["aA"]}
            dot_b = (sb - {g["pB"]}) | {g["aB"]} if case == 1 else set(sb)
            final = {
                1: (dot_a, dot_b | {g["pB"]}),
                2: (dot_a, sb | {g["aB"]}),
                3: (dot_a, sb | {g["qB"]}),
                4: (dot_a | {g["qA"]}, set(sb)),
            }[case]
            self.expect = (dot_a, dot_b) + final
        else:
            dot_a = sa - {g["pA"]}
            dot_b = (sb - {g["pB"]}) | {g["aB"]} if case in (6, 7) else set(sb)
            final = {
                5: (sa, set(sb)),
                6: (dot_a, dot_b | {g["pB"]}),
                7: (sa, dot_b),
                8: (dot_a, sb | {g["aB"]}),
            }[case]
            self.expect = (dot_a, dot_b) + final

    def middle(self, a: BlockState, b: BlockState) -> None:
        got = (self._smalls(a), self._smalls(b))
        if got != self.expect[:2]:
            raise InvariantViolation(f"case {self.case} ({CASES[self.case]}): unexpected sets after delete/undelete")

    def after(self, a: BlockState, b: BlockState, start: int) -> None:
        got = (self._smalls(a), self._smalls(b))
        if got != self.expect[2:]:
            raise InvariantViolation(f"case {self.case} ({CASES[self.case]}): unexpected sets after advance")
        self.stats.cases[self.case] += 1
        self._last = (a, b) + got
        self.window(a, b, start, got)


def _a_first(a: BlockState, b: BlockState) -> bool:
    # Peek(A) <= Peek(B) with A winning ties; an exhausted cursor is +INF and
    # ranks above padding elements, which are INF-valued too
    if a.exhausted:
        return False
    if b.exhausted:
        return True
    return a.peek() <= b.peek()


def postprocess_reference(
    inp: FilterInput, perms: np.ndarray, *, audit: bool = False
) -> tuple[np.ndarray, PostprocessStats]:
    spec = inp.spec
    k, h, b = spec.k, spec.h, spec.b
    vals = inp.reference_values()
    stats = PostprocessStats()
    auditor = _Auditor(inp, stats) if audit else None
    perm_rows = perms.tolist()

    out = []
    blk_b = BlockState(vals[0:k], perm_rows[0], offset=0)
    if auditor:
        auditor.window(None, blk_b, 0)
    out.append(blk_b.peek())
    for j in range(1, b):
        blk_a = blk_b
        blk_b = BlockState(vals[j * k:(j + 1) * k], perm_rows[j], offset=j * k)
        blk_b.unwind()
        for i in range(k):
            if auditor:
                auditor.before(blk_a, blk_b, i)
            blk_a.delete(i)
            blk_b.undelete(i)
            if auditor:
                auditor.middle(blk_a, blk_b)
            if blk_a.small() + blk_b.small() < h:
                if _a_first(blk_a, blk_b):
                    blk_a.advance()
                else:
                    blk_b.advance()
            if auditor:
                auditor.after(blk_a, blk_b, (j - 1) * k + i + 1)
            out.append(min(blk_a.peek(), blk_b.peek()))
        stats.cells += blk_a.cells
    stats.cells += blk_b.cells

    y = np.array(out[: spec.output_length], dtype=inp.padded.dtype)
    return y, stats


def median_filter(x, k: int, *, debug: bool | None = None) -> np.ndarray:
    """Sliding-window medians of ``x`` for odd window size ``k``.

    Returns an array of length max(0, n - k + 1) with the input's dtype; entry
    i is the (h+1)-th smallest of x[i:i+k], where k = 2h+1.
    """
    check_window(k)
    arr = as_samples(x)
    n = arr.shape[0]
    if n < k:
        return arr[:0].copy()
    if k == 1:
        return arr.copy()
    spec = make_window_spec(n, k)
    inp = pad_to_blocks(arr, spec)
    perms = piecewise_sort(inp)
    if debug is None:
        debug = debug_enabled()
    if debug:
        y, _ = postprocess_reference(inp, perms, audit=True)
        return y
    return postprocess(inp, perms)


def sort_via_median_filter(blocks: Sequence[Sequence[int]], h: int) -> list[list[int]]:
    """Sort every block of h+1 samples with one median filter pass.

    Each block is surrounded by h copies of -INF and h copies of +INF; windows
    of size 2h+1 sliding across a block then read out its order statistics.
    """
    if h < 0:
        raise ValueError(f"h must be >= 0, got {h}")
    info = np.iinfo(np.int64)
    gadget = 3 * h + 1
    parts: list[int] = []
    for blk in blocks:
        if len(blk) != h + 1:
            raise ValueError(f"every block must have h+1 = {h + 1} samples, got {len(blk)}")
        parts.extend([info.min] * h)
        parts.extend(int(v) for v in blk)
        parts.extend([info.max] * h)
    if not parts:
        return []
    y = median_filter(as_samples(parts, 64), 2 * h + 1)
    return [y[j * gadget:j * gadget + h + 1].tolist() for j in range(len(blocks))]
