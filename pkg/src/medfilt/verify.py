"""Cross-check every median filter against the naive oracle."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .algorithms import ALGORITHMS
from .baselines import naive_median_filter
from .generators import KINDS, GeneratorSpec, generate

log = logging.getLogger(__name__)

ALPHABET = (0, 1, 2)


@dataclass
class Mismatch:
    algorithm: str
    k: int
    x: list
    position: int | None
    expected: object
    got: object
    phase: str
    generator: str | None = None
    width: int = 64

    def describe(self) -> str:
        where = f"position {self.position}" if self.position is not None else "output"
        src = f" from {self.generator}/{self.width}" if self.generator else ""
        return (
            f"{self.algorithm} disagrees with the oracle ({self.phase}{src}): k={self.k}, "
            f"x={self.x}, {where}: expected {self.expected}, got {self.got}"
        )


@dataclass
class VerifyReport:
    cases: int
    mismatch: Mismatch | None = None

    @property
    def ok(self) -> bool:
        return self.mismatch is None


def _compare(fn, x: np.ndarray, k: int, expected: np.ndarray):
    try:
        got = np.asarray(fn(x, k))
    except Exception as exc:  # a crash is a disagreement too
        return None, repr(exc), f"error: {exc!r}"
    if got.shape != expected.shape:
        return None, f"length {expected.shape[0]}", f"length {got.shape[0]}"
    bad = np.flatnonzero(got != expected)
    if bad.size:
        i = int(bad[0])
        return i, int(expected[i]), int(got[i])
    return False


def _fails(fn, oracle, x: np.ndarray, k: int) -> bool:
    return _compare(fn, x, k, oracle(x, k)) is not False


def shrink(fn, oracle, x: np.ndarray, k: int) -> tuple[np.ndarray, int]:
    """Greedily drop elements and lower values while the disagreement persists."""
    changed = True
    while changed:
        changed = False
        if k > 1 and _fails(fn, oracle, x, k - 2):
            k -= 2
            changed = True
            continue
        for i in range(len(x)):
            if len(x) - 1 < k:
                break
            cand = np.delete(x, i)
            if _fails(fn, oracle, cand, k):
                x, changed = cand, True
                break
        if changed:
            continue
        for i in range(len(x)):
            if x[i] != 0:
                cand = x.copy()
                cand[i] = 0 if abs(int(x[i])) > 2 else int(x[i]) - (1 if x[i] > 0 else -1)
                if _fails(fn, oracle, cand, k):
                    x, changed = cand, True
                    break
    return x, k


def verify(
    n_max: int = 8,
    trials: int = 1000,
    seed: int = 0,
    algorithms: Mapping[str, Callable] | None = None,
    oracle: Callable = naive_median_filter,
    n_random_max: int = 500,
) -> VerifyReport:
    algorithms = dict(ALGORITHMS if algorithms is None else algorithms)
    cases = 0

    def check(x, k, phase, generator=None, width=64):
        nonlocal cases
        expected = oracle(x, k)
        for name, fn in algorithms.items():
            res = _compare(fn, x, k, expected)
            cases += 1
            if res is not False:
                sx, sk = shrink(fn, oracle, x, k)
                sres = _compare(fn, sx, sk, oracle(sx, sk))
                pos, exp, got = sres if sres is not False else res
                return Mismatch(name, sk, sx.tolist(), pos, exp, got, phase, generator, width)
        return None

    for n in range(1, n_max + 1):
        for combo in itertools.product(ALPHABET, repeat=n):
            x = np.array(combo, dtype=np.int64)
            for k in range(1, n + 1, 2):
                bad = check(x, k, "exhaustive")
                if bad:
                    return VerifyReport(cases, bad)
        log.debug("exhaustive n=%d done (%d comparisons)", n, cases)

    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = int(rng.integers(1, n_random_max + 1))
        k = 2 * int(rng.integers(0, (n - 1) // 2 + 1)) + 1
        kind = KINDS[int(rng.integers(len(KINDS)))]
        width = (32, 64)[int(rng.integers(2))]
        x = generate(GeneratorSpec(kind, n, int(rng.integers(2**63)), width))
        bad = check(x, k, "random", kind, width)
        if bad:
            return VerifyReport(cases, bad)
    return VerifyReport(cases)
