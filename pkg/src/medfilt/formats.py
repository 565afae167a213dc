"""Sample file formats and the output checksum.

text    one decimal integer per line, LF-terminated
bin     one header byte (32 or 64), then little-endian signed integers of that width
"""

from __future__ import annotations

import numpy as np

from .core import WIDTHS

FORMATS = ("text", "bin")
_INT64 = np.iinfo(np.int64)
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK = 2**64 - 1
# below this many samples the plain loop beats JIT start-up in a fresh process
_SMALL = 50_000


class FormatError(ValueError):
    pass


def parse_text(data: bytes | str) -> np.ndarray:
    if isinstance(data, bytes):
        data = data.decode("ascii", errors="replace")
    values = []
    for lineno, line in enumerate(data.split("\n"), start=1):
        token = line.strip()
        if not token:
            continue
        try:
            v = int(token, 10)
        except ValueError:
            raise FormatError(f"line {lineno}: not an integer: {token[:40]!r}") from None
        if not _INT64.min <= v <= _INT64.max:
            raise FormatError(f"line {lineno}: value out of 64-bit range")
        values.append(v)
    return np.array(values, dtype=np.int64)


def emit_text(x: np.ndarray) -> bytes:
    if not len(x):
        return b""
    return ("\n".join(map(str, np.asarray(x).tolist())) + "\n").encode("ascii")


def parse_bin(data: bytes) -> np.ndarray:
    if not data:
        return np.empty(0, dtype=np.int64)
    width = data[0]
    if width not in WIDTHS:
        raise FormatError(f"binary header byte must be 32 or 64, got {width}")
    size = width // 8
    body = data[1:]
    if len(body) % size:
        raise FormatError(f"binary payload of {len(body)} bytes is not a multiple of {size}")
    return np.frombuffer(body, dtype=f"<i{size}").astype(WIDTHS[width])


def emit_bin(x: np.ndarray, width: int | None = None) -> bytes:
    x = np.asarray(x)
    if width is None:
        width = x.dtype.itemsize * 8 if x.dtype in (np.dtype(np.int32), np.dtype(np.int64)) else 64
    if width not in WIDTHS:
        raise FormatError(f"width must be 32 or 64, got {width}")
    return bytes([width]) + x.astype(f"<i{width // 8}").tobytes()


def parse(data: bytes, fmt: str) -> np.ndarray:
    if fmt == "text":
        return parse_text(data)
    if fmt == "bin":
        return parse_bin(data)
    raise FormatError(f"unknown format {fmt!r}")


def emit(x: np.ndarray, fmt: str, width: int | None = None) -> bytes:
    if fmt == "text":
        return emit_text(x)
    if fmt == "bin":
        return emit_bin(x, width)
    raise FormatError(f"unknown format {fmt!r}")


def checksum(y) -> int:
    """64-bit FNV-1a style fold over the samples, each widened to int64."""
    arr = np.ascontiguousarray(np.asarray(y, dtype=np.int64))
    if arr.size < _SMALL:
        acc = _FNV_OFFSET
        for v in arr.view(np.uint64).tolist():
            acc = ((acc ^ v) * _FNV_PRIME) & _MASK
        return acc
    from . import _kernels

    return int(_kernels.fnv_fold(arr))


def format_checksum(value: int) -> str:
    return f"{value:016x}"
