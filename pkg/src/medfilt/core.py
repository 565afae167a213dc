"""Shared types: samples, the +INF sentinel, window arithmetic, stable sort permutations."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

WIDTHS = {32: np.int32, 64: np.int64}


class WindowError(ValueError):
    """Raised for window sizes the algorithm cannot handle."""


@functools.total_ordering
class _Infinity:
    __slots__ = ("_sign",)

    def __init__(self, sign: int):
        self._sign = sign

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other._sign == self._sign

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self._sign < other._sign
        return self._sign < 0

    def __hash__(self):
        return hash(("inf", self._sign))

    def __repr__(self):
        return "+INF" if self._sign > 0 else "-INF"


INF = _Infinity(+1)
NEG_INF = _Infinity(-1)


def is_sentinel(v) -> bool:
    return isinstance(v, _Infinity)


@dataclass(frozen=True)
class WindowSpec:
    n: int
    k: int
    h: int
    b: int

    @property
    def empty(self) -> bool:
        """True when no full window fits, so the output is empty."""
        return self.n < self.k

    @property
    def padded_length(self) -> int:
        return self.b * self.k

    @property
    def output_length(self) -> int:
        return max(0, self.n - self.k + 1)


def check_window(k: int) -> None:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise WindowError(f"window size must be an integer, got {k!r}")
    if k < 1:
        raise WindowError(f"window size must be >= 1, got {k}")
    if k % 2 == 0:
        raise WindowError(f"even window size unsupported: k={k} (k must be odd, k = 2h+1)")


def make_window_spec(n: int, k: int) -> WindowSpec:
    check_window(k)
    if n < 1:
        raise WindowError(f"input length must be >= 1, got {n}")
    k = int(k)
    return WindowSpec(n=int(n), k=k, h=(k - 1) // 2, b=-(-int(n) // k))


def stable_sort_permutation(alpha: Sequence) -> np.ndarray:
    """Indexes that sort ``alpha`` by the pair (alpha[i], i).

    Works for plain ints as well as the INF sentinel; ``alpha`` is not modified.
    """
    pairs = sorted((v, i) for i, v in enumerate(alpha))
    return np.fromiter((i for _, i in pairs), dtype=np.int64, count=len(pairs))


def as_samples(x, width: int | None = None) -> np.ndarray:
    """Coerce ``x`` to a 1-D signed integer array of width 32 or 64.

    Arrays already typed int32/int64 pass through unchanged when ``width`` is
    None; anything else defaults to 64-bit.  Values that do not fit raise
    OverflowError; floating point input is rejected.
    """
    if width is not None and width not in WIDTHS:
        raise ValueError(f"width must be 32 or 64, got {width}")
    if isinstance(x, np.ndarray):
        arr = x
    else:
        arr = np.asarray(list(x) if not isinstance(x, (list, tuple)) else x)
        if arr.size == 0:
            arr = arr.astype(np.int64)
        elif arr.dtype == object:
            raise OverflowError("sample value out of 64-bit range")
    if arr.ndim != 1:
        raise ValueError(f"samples must be one-dimensional, got shape {arr.shape}")
    if arr.dtype.kind not in "iu":
        raise TypeError(f"samples must be integers, got dtype {arr.dtype}")
    if width is None:
        target = arr.dtype.type if arr.dtype in (np.dtype(np.int32), np.dtype(np.int64)) else np.int64
    else:
        target = WIDTHS[width]
    if arr.dtype == target:
        return arr
    info = np.iinfo(target)
    if arr.size and (int(arr.min()) < info.min or int(arr.max()) > info.max):
        raise OverflowError(f"sample value out of {info.bits}-bit range")
    return arr.astype(target)


def width_of(arr: np.ndarray) -> int:
    return arr.dtype.itemsize * 8
