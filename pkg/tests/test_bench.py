import csv
import json

import pytest

from medfilt.bench import HEADER, SUMMARY, medians, read_csv, run_cell, run_sweep, sweep_shape, write_csv, write_meta


def test_sweep_shape():
    assert sweep_shape(10**4, 10) == (1000, 21000)
    assert sweep_shape(10**4, 3) == (3333, 7 * 3333)
    assert sweep_shape(100, 0) == (100, 100)


def test_run_cell_rows():
    recs = run_cell("sort", "r-small", 64, bh=200, h=4, repeats=5, seed=7)
    assert len(recs) == 6
    assert [r.repeat for r in recs] == [0, 1, 2, 3, 4, SUMMARY]
    assert all(r.n == 9 * 50 and r.b == 50 for r in recs)
    assert recs[-1].checksum == ""
    times = sorted(r.wall_time for r in recs[:-1])
    assert recs[-1].wall_time == times[2]


def test_checksums_agree_across_algorithms(tmp_path):
    recs = run_sweep(300, [0, 3, 10], ["sort", "heap", "tree", "move", "naive"], ["r-asc", "r-block"],
                     widths=[32, 64], repeats=2, seed=1)
    groups = {}
    for r in recs:
        if r.repeat != SUMMARY:
            groups.setdefault((r.generator, r.width, r.h, r.repeat), set()).add(r.checksum)
    assert len(groups) == 2 * 2 * 3 * 2
    assert all(len(v) == 1 for v in groups.values())
    assert len(medians(recs)) == 5 * 2 * 2 * 3


def test_csv_schema(tmp_path):
    recs = run_sweep(50, [1, 5], ["sort"], ["asc"], repeats=1)
    out = tmp_path / "b.csv"
    write_csv(recs, out)
    lines = out.read_text().splitlines()
    assert lines[0] == "algorithm,generator,width,n,h,b,repeat,wall_time_s,checksum"
    assert tuple(lines[0].split(",")) == HEADER
    assert len(lines) == 1 + 2 * 2
    rows = read_csv(out)
    assert rows[0]["algorithm"] == "sort" and rows[0]["repeat"] == "0"
    assert rows[1]["repeat"] == SUMMARY and rows[1]["checksum"] == ""
    float(rows[0]["wall_time_s"])
    meta = write_meta(out, seed=0)
    data = json.loads(meta.read_text())
    assert data["prng"] == "numpy.random.PCG64" and data["seed"] == 0


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(bh=5, hs=[10]),
        dict(bh=50, hs=[-1]),
        dict(bh=50, hs=[]),
        dict(bh=50, hs=[2], algorithms=["bubble"]),
        dict(bh=50, hs=[2], generators=["noise"]),
        dict(bh=50, hs=[2], repeats=0),
    ],
)
def test_sweep_validation(kwargs):
    args = dict(algorithms=["sort"], generators=["asc"], repeats=1)
    args.update(kwargs)
    with pytest.raises(ValueError):
        run_sweep(args.pop("bh"), args.pop("hs"), **args)
