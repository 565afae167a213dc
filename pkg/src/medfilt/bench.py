"""Benchmark sweeps: fix the product b*h, vary h, time each algorithm.

For every (generator, width, h) cell the input length is n = (2h+1) * b with
b = round(bh / h), so n drifts slightly with h.  Each algorithm gets one
discarded warm-up run, then ``repeats`` timed runs on inputs generated from
seeds ``seed + repeat``; a final row per cell carries the median time.
"""

from __future__ import annotations

import csv
import gc
import json
import logging
import platform
import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import algorithms as registry
from .formats import checksum, format_checksum
from .generators import KINDS, PRNG_NAME, GeneratorSpec, generate

log = logging.getLogger(__name__)

HEADER = ("algorithm", "generator", "width", "n", "h", "b", "repeat", "wall_time_s", "checksum")
SUMMARY = "median"


@dataclass(frozen=True)
class BenchRecord:
    algorithm: str
    generator: str
    width: int
    n: int
    h: int
    b: int
    repeat: int | str
    wall_time: float
    checksum: str

    def row(self) -> list[str]:
        return [
            self.algorithm, self.generator, str(self.width), str(self.n), str(self.h),
            str(self.b), str(self.repeat), f"{self.wall_time:.9f}", self.checksum,
        ]


def sweep_shape(bh: int, h: int) -> tuple[int, int]:
    """(b, n) for one sweep point; h = 0 is treated as h = 1 when dividing."""
    b = max(1, round(bh / max(h, 1)))
    return b, (2 * h + 1) * b


def _timed(fn, x, k) -> tuple[float, np.ndarray]:
    gc.collect()
    enabled = gc.isenabled()
    gc.disable()
    try:
        t0 = time.perf_counter()
        y = fn(x, k)
        elapsed = time.perf_counter() - t0
    finally:
        if enabled:
            gc.enable()
    return elapsed, y


def run_cell(
    algorithm: str,
    generator: str,
    width: int,
    bh: int,
    h: int,
    repeats: int = 5,
    seed: int = 0,
    inputs: Sequence[np.ndarray] | None = None,
) -> list[BenchRecord]:
    fn = registry.get(algorithm)
    b, n = sweep_shape(bh, h)
    k = 2 * h + 1
    if inputs is None:
        inputs = [generate(GeneratorSpec(generator, n, (seed + r) % 2**64, width)) for r in range(repeats)]
    _timed(fn, inputs[0], k)
    records = []
    for r, x in enumerate(inputs):
        elapsed, y = _timed(fn, x, k)
        records.append(
            BenchRecord(algorithm, generator, width, n, h, b, r, elapsed, format_checksum(checksum(y)))
        )
        log.info("%s %s/%d h=%d repeat %d: %.6f s", algorithm, generator, width, h, r, elapsed)
    med = statistics.median(rec.wall_time for rec in records)
    records.append(BenchRecord(algorithm, generator, width, n, h, b, SUMMARY, med, ""))
    return records


def run_sweep(
    bh: int,
    hs: Iterable[int],
    algorithms: Sequence[str],
    generators: Sequence[str],
    widths: Sequence[int] = (64,),
    repeats: int = 5,
    seed: int = 0,
) -> list[BenchRecord]:
    hs = list(hs)
    if not hs:
        raise ValueError("at least one h is required")
    if any(h < 0 for h in hs):
        raise ValueError("h must be >= 0")
    if bh < max(hs):
        raise ValueError(f"bh={bh} must be >= max(h)={max(hs)}")
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    for name in algorithms:
        registry.get(name)
    for g in generators:
        if g not in KINDS:
            raise ValueError(f"unknown generator {g!r}; choose from {', '.join(KINDS)}")
    records = []
    for g in generators:
        for w in widths:
            for h in hs:
                b, n = sweep_shape(bh, h)
                inputs = [generate(GeneratorSpec(g, n, (seed + r) % 2**64, w)) for r in range(repeats)]
                for name in algorithms:
                    records.extend(run_cell(name, g, w, bh, h, repeats, seed, inputs))
    return records


def write_csv(records: Iterable[BenchRecord], path) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(HEADER)
        for rec in records:
            w.writerow(rec.row())


def read_csv(path) -> list[dict]:
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def write_meta(path, **params) -> Path:
    import numba

    meta = {
        "prng": PRNG_NAME,
        "numpy": np.__version__,
        "numba": numba.__version__,
        "python": platform.python_version(),
        "machine": platform.machine(),
        "processor": platform.processor(),
        "timer": "time.perf_counter",
        **params,
    }
    out = Path(str(path) + ".meta.json")
    out.write_text(json.dumps(meta, indent=2) + "\n")
    return out


def medians(records: Iterable[BenchRecord]) -> dict[tuple, float]:
    """Map (algorithm, generator, width, h) to the summary median time."""
    return {
        (r.algorithm, r.generator, r.width, r.h): r.wall_time
        for r in records
        if r.repeat == SUMMARY
    }

