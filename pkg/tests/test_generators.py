import numpy as np
import pytest

from medfilt.generators import BLOCK_BASE, BLOCK_LENGTH, KINDS, NOISE, GeneratorSpec, generate


def gen(kind, n, seed=0, width=64):
    return generate(GeneratorSpec(kind, n, seed, width))


def test_kinds():
    assert KINDS == ("asc", "desc", "r-asc", "r-desc", "r-large", "r-small", "r-block")


def test_deterministic_inputs():
    assert gen("asc", 4).tolist() == [0, 1, 2, 3]
    assert gen("desc", 4).tolist() == [4, 3, 2, 1]


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("width", [32, 64])
def test_dtype_length_and_seed(kind, width):
    a = gen(kind, 3000, seed=11, width=width)
    assert a.dtype == (np.int32 if width == 32 else np.int64)
    assert a.shape == (3000,)
    assert np.array_equal(a, gen(kind, 3000, seed=11, width=width))


def test_seeds_differ():
    assert not np.array_equal(gen("r-large", 100, 1), gen("r-large", 100, 2))


def test_noise_ranges():
    n = 5000
    i = np.arange(n)
    d = gen("r-asc", n, 3) - i
    assert d.min() >= 0 and d.max() < NOISE
    d = gen("r-desc", n, 3) - (n - i)
    assert d.min() >= 0 and d.max() < NOISE
    s = gen("r-small", n, 3)
    assert s.min() >= 0 and s.max() < NOISE


def test_r_large_spans_width():
    x = gen("r-large", 20000, 4, 32)
    assert x.min() < -(2**30) and x.max() > 2**30


def test_r_block_segments():
    n = 3 * BLOCK_LENGTH + 17
    x = gen("r-block", n, 9)
    assert x.min() >= 0 and x.max() < BLOCK_BASE + NOISE
    for start in range(0, n, BLOCK_LENGTH):
        seg = x[start:start + BLOCK_LENGTH]
        assert seg.max() - seg.min() < NOISE


def test_validation():
    with pytest.raises(ValueError):
        GeneratorSpec("bogus", 10)
    with pytest.raises(ValueError):
        GeneratorSpec("asc", 0)
    with pytest.raises(ValueError):
        GeneratorSpec("asc", 10, width=16)
    with pytest.raises(ValueError):
        GeneratorSpec("asc", 10, seed=-1)


def test_overflow_detected():
    with pytest.raises(OverflowError):
        gen("desc", 2**31, width=32)
