"""Input generators for verification and benchmarks.

All random generators draw from numpy's PCG64 seeded with the given 64-bit
seed, so a (kind, n, seed, width) tuple always yields the same array.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import WIDTHS

KINDS = ("asc", "desc", "r-asc", "r-desc", "r-large", "r-small", "r-block")
PRNG_NAME = "numpy.random.PCG64"

NOISE = 10**4
BLOCK_LENGTH = 1000
BLOCK_BASE = 10**6


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    seed: int = 0
    width: int = 64

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.width not in WIDTHS:
            raise ValueError(f"width must be 32 or 64, got {self.width}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned value, got {self.seed}")


# largest value each kind can produce, for overflow checks
_PEAK = {
    "asc": lambda n: n - 1,
    "desc": lambda n: n,
    "r-asc": lambda n: n - 1 + NOISE - 1,
    "r-desc": lambda n: n + NOISE - 1,
    "r-large": lambda n: 0,
    "r-small": lambda n: NOISE - 1,
    "r-block": lambda n: BLOCK_BASE - 1 + NOISE - 1,
}


def generate(spec: GeneratorSpec) -> np.ndarray:
    dtype = WIDTHS[spec.width]
    info = np.iinfo(dtype)
    n = spec.n
    if _PEAK[spec.kind](n) > info.max:
        raise OverflowError(f"{spec.kind} with n={n} does not fit in {spec.width}-bit samples")
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    ramp = np.arange(n, dtype=np.int64)
    kind = spec.kind
    if kind == "asc":
        x = ramp
    elif kind == "desc":
        x = n - ramp
    elif kind == "r-asc":
        x = ramp + rng.integers(0, NOISE, n)
    elif kind == "r-desc":
        x = (n - ramp) + rng.integers(0, NOISE, n)
    elif kind == "r-large":
        return rng.integers(info.min, info.max, n, dtype=dtype, endpoint=True)
    elif kind == "r-small":
        x = rng.integers(0, NOISE, n)
    else:
        segments = -(-n // BLOCK_LENGTH)
        base = rng.integers(0, BLOCK_BASE, segments)
        x = np.repeat(base, BLOCK_LENGTH)[:n] + rng.integers(0, NOISE, n)
    return x.astype(dtype)
