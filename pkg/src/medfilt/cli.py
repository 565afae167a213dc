"""Command-line front end: ``medfilt {filter,generate,checksum,verify,bench}``."""

from __future__ import annotations

import argparse
import logging
import sys


from .core import WindowError, check_window, width_of
from .formats import FORMATS, FormatError, checksum, emit, format_checksum, parse
from .generators import KINDS, GeneratorSpec, generate

log = logging.getLogger("medfilt")

# kept in step with algorithms.ALGORITHMS; the filters themselves are imported
# lazily because loading the JIT kernels dominates start-up for light commands
ALGORITHM_NAMES = ("sort", "heap", "tree", "move", "naive")


def _read(path: str | None) -> bytes:
    if path in (None, "-"):
        return sys.stdin.buffer.read()
    with open(path, "rb") as f:
        return f.read()


def _write(path: str | None, data: bytes) -> None:
    if path in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as f:
            f.write(data)


def _csv_list(text: str, conv=str) -> list:
    return [conv(t.strip()) for t in text.split(",") if t.strip()]


def cmd_filter(args) -> int:
    from . import algorithms as registry

    check_window(args.k)
    fn = registry.get(args.algorithm)
    x = parse(_read(args.input), args.format)
    width = width_of(x) if x.size else 64
    if x.shape[0] < args.k:
        log.warning("input has %d samples, fewer than k=%d: output is empty", x.shape[0], args.k)
    y = fn(x, args.k)
    _write(args.output, emit(y, args.format, width))
    return 0


def cmd_generate(args) -> int:
    x = generate(GeneratorSpec(args.kind, args.n, args.seed, args.width))
    _write(args.output, emit(x, args.format, args.width))
    return 0


def cmd_checksum(args) -> int:
    x = parse(_read(args.input), args.format)
    print(format_checksum(checksum(x)))
    return 0


def cmd_verify(args) -> int:
    from .verify import verify

    report = verify(n_max=args.n_max, trials=args.trials, seed=args.seed)
    if report.ok:
        print(f"ok: {report.cases} comparisons, all implementations agree with the oracle")
        return 0
    print(f"MISMATCH after {report.cases} comparisons: {report.mismatch.describe()}")
    return 1


def cmd_bench(args) -> int:
    from .bench import run_sweep, write_csv, write_meta

    hs = _csv_list(args.h, int)
    algorithms = _csv_list(args.algorithms)
    generators = _csv_list(args.generators)
    widths = _csv_list(args.widths, int)
    records = run_sweep(args.bh, hs, algorithms, generators, widths, args.repeats, args.seed)
    write_csv(records, args.out)
    write_meta(
        args.out, seed=args.seed, bh=args.bh, h=hs, algorithms=algorithms,
        generators=generators, widths=widths, repeats=args.repeats,
    )
    log.info("wrote %d records to %s", len(records), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="medfilt", description="Sorting-based 1-D median filter and benchmarks")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("filter", help="median-filter a sample stream")
    f.add_argument("--k", type=int, required=True, help="odd window size")
    f.add_argument("--algorithm", default="sort", choices=ALGORITHM_NAMES)
    f.add_argument("--format", default="text", choices=FORMATS)
    f.add_argument("--in", dest="input", default=None, help="input path (default stdin)")
    f.add_argument("--out", dest="output", default=None, help="output path (default stdout)")
    f.set_defaults(func=cmd_filter)

    g = sub.add_parser("generate", help="write a generated input")
    g.add_argument("--kind", required=True, choices=KINDS)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--width", type=int, default=64, choices=(32, 64))
    g.add_argument("--format", default="text", choices=FORMATS)
    g.add_argument("--out", dest="output", default=None)
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("checksum", help="print the 64-bit checksum of a sample stream")
    c.add_argument("--format", default="text", choices=FORMATS)
    c.add_argument("--in", dest="input", default=None)
    c.set_defaults(func=cmd_checksum)

    v = sub.add_parser("verify", help="cross-check all algorithms against the naive oracle")
    v.add_argument("--n-max", type=int, default=8)
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="run a benchmark sweep and write CSV")
    b.add_argument("--bh", type=int, required=True, help="fixed product b*h")
    b.add_argument("--h", required=True, help="comma-separated half-window sizes")
    b.add_argument("--algorithms", default="sort,heap")
    b.add_argument("--generators", default="r-large")
    b.add_argument("--widths", default="64")
    b.add_argument("--repeats", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="medfilt: %(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (WindowError, FormatError, OverflowError, ValueError, OSError) as exc:
        print(f"medfilt: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
