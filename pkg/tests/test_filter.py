import numpy as np
import pytest
from hypothesis import given, strategies as st

from medfilt.block import InvariantViolation
from medfilt.core import INF, WindowError, make_window_spec
from medfilt.filter import (
    CASES, pad_to_blocks, piecewise_sort, postprocess, postprocess_reference,
    median_filter, sort_via_median_filter,
)

I64 = np.iinfo(np.int64)
I32 = np.iinfo(np.int32)


def brute(x, k):
    x = [int(v) for v in x]
    return [sorted(x[i:i + k])[k // 2] for i in range(len(x) - k + 1)]


def prepared(x, k):
    x = np.asarray(x, dtype=np.int64)
    return pad_to_blocks(x, make_window_spec(len(x), k))


def test_pad_partial_block():
    inp = prepared([1, 2, 3, 4, 5], 3)
    assert inp.reference_values() == [1, 2, 3, 4, 5, INF]
    assert inp.padded.tolist() == [1, 2, 3, 4, 5, I64.max]


def test_pad_exact_and_degenerate():
    assert prepared(range(6), 3).padded.tolist() == list(range(6))
    assert prepared([7], 1).padded.tolist() == [7]


def test_piecewise_sort_examples():
    assert piecewise_sort(prepared([5, 1, 3, 2, 4, 6], 3)).tolist() == [[1, 2, 0], [0, 1, 2]]
    assert piecewise_sort(prepared([6, 5, 4, 3, 2, 1], 3)).tolist() == [[2, 1, 0], [2, 1, 0]]
    assert piecewise_sort(prepared([4] * 9, 3)).tolist() == [[0, 1, 2]] * 3


def test_piecewise_sort_wide_range_uses_tie_repair():
    # the value span is too wide for packed keys
    x = [I64.max, I64.min, I64.max, 0, I64.min, I64.min, 5]
    perm = piecewise_sort(prepared(x, 3))
    assert perm.tolist() == [[1, 0, 2], [1, 2, 0], [0, 1, 2]]


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=60), st.integers(0, 8))
def test_piecewise_sort_is_stable(xs, h):
    k = 2 * h + 1
    inp = prepared(xs, k)
    vals = inp.reference_values()
    for j, row in enumerate(piecewise_sort(inp).tolist()):
        blk = vals[j * k:(j + 1) * k]
        assert [(blk[i], i) for i in row] == sorted((v, i) for i, v in enumerate(blk))


@pytest.mark.parametrize("debug", [False, True])
def test_median_filter_examples(debug):
    assert median_filter([5, 1, 3, 2, 4], 3, debug=debug).tolist() == [3, 2, 3]
    assert median_filter([1, 5, 2, 8, 3, 9, 4], 7, debug=debug).tolist() == [4]
    assert median_filter([2, 1], 3, debug=debug).tolist() == []
    assert median_filter([9], 1, debug=debug).tolist() == [9]
    assert median_filter([1, 2, 3, 4, 5, 6], 1, debug=debug).tolist() == [1, 2, 3, 4, 5, 6]
    assert median_filter([7] * 11, 5, debug=debug).tolist() == [7] * 7


def test_median_filter_errors_and_edges():
    with pytest.raises(WindowError, match="even"):
        median_filter([1, 2, 3, 4], 4)
    assert median_filter([], 3).shape == (0,)
    assert median_filter(np.array([3, 1, 2], dtype=np.int32), 3).dtype == np.int32


def test_extreme_values_both_widths():
    for info, dtype in ((I64, np.int64), (I32, np.int32)):
        x = np.array([info.max, info.min, info.max, info.max, info.min, 0, info.max], dtype=dtype)
        assert median_filter(x, 3).tolist() == brute(x, 3)
        assert median_filter(x, 5, debug=True).tolist() == brute(x, 5)


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=80), st.integers(0, 12))
def test_release_matches_brute_force(xs, h):
    k = 2 * h + 1
    assert median_filter(xs, k).tolist() == brute(xs, k)


@given(st.lists(st.integers(-2, 2), min_size=1, max_size=50), st.integers(0, 6))
def test_audited_matches_brute_force(xs, h):
    k = 2 * h + 1
    assert median_filter(xs, k, debug=True).tolist() == brute(xs, k)


def test_env_var_turns_on_audit(monkeypatch):
    import medfilt.filter as f

    calls = []
    real = f.postprocess_reference
    monkeypatch.setattr(f, "postprocess_reference", lambda *a, **kw: calls.append(kw) or real(*a, **kw))
    monkeypatch.setenv("MEDFILT_DEBUG_INVARIANTS", "1")
    assert f.median_filter([5, 1, 3, 2, 4], 3).tolist() == [3, 2, 3]
    monkeypatch.setenv("MEDFILT_DEBUG_INVARIANTS", "0")
    f.median_filter([5, 1, 3, 2, 4], 3)
    assert calls == [{"audit": True}]


def test_audit_covers_every_case():
    rng = np.random.default_rng(3)
    seen = set()
    for _ in range(150):
        n = int(rng.integers(1, 120))
        k = 2 * int(rng.integers(0, (n - 1) // 2 + 1)) + 1
        x = rng.integers(0, int(rng.choice([2, 4, 50])), n)
        inp = prepared(x, k)
        y, stats = postprocess_reference(inp, piecewise_sort(inp), audit=True)
        assert y.tolist() == brute(x, k)
        seen |= set(stats.cases)
    assert seen == set(CASES)


def test_audit_flags_a_bad_permutation():
    inp = prepared([5, 1, 3, 2, 4, 6, 0, 8, 7], 3)
    perms = piecewise_sort(inp).copy()
    perms[1] = perms[1][::-1]
    with pytest.raises(InvariantViolation):
        postprocess_reference(inp, perms, audit=True)


def test_release_and_reference_agree_on_padding():
    x = np.array([3, 9, 1, 4, 4, 2, 8, 0], dtype=np.int64)
    inp = prepared(x, 5)
    perms = piecewise_sort(inp)
    ref, stats = postprocess_reference(inp, perms)
    assert postprocess(inp, perms).tolist() == ref.tolist() == brute(x, 5)
    assert stats.cells > 0


def test_sort_via_median_filter_examples():
    assert sort_via_median_filter([[4, 2]], 1) == [[2, 4]]
    assert sort_via_median_filter([[1, 2, 3]], 2) == [[1, 2, 3]]
    assert sort_via_median_filter([[3, 1], [9, 7]], 1) == [[1, 3], [7, 9]]
    assert sort_via_median_filter([], 3) == []
    assert sort_via_median_filter([[5], [2]], 0) == [[5], [2]]


def test_sort_via_median_filter_validates():
    with pytest.raises(ValueError):
        sort_via_median_filter([[1, 2, 3]], 1)
    with pytest.raises(ValueError):
        sort_via_median_filter([[1]], -1)
