import numpy as np

from medfilt.baselines import naive_median_filter
from medfilt.filter import median_filter
from medfilt.verify import shrink, verify


def broken_when_long(x, k):
    # wrong whenever the window count reaches 2 and the window holds a 2
    y = naive_median_filter(x, k).copy()
    if k >= 3 and len(y) >= 2 and 2 in np.asarray(x)[1:1 + k]:
        y[1] += 1
    return y


def test_exhaustive_only():
    report = verify(n_max=5, trials=0, algorithms={"sort": median_filter})
    # sum over n <= 5 of 3^n times the number of odd k <= n
    assert report.ok
    assert report.cases == sum(3**n * ((n + 1) // 2) for n in range(1, 6))


def test_random_phase_runs():
    report = verify(n_max=2, trials=25, seed=4, n_random_max=60)
    assert report.ok
    assert report.cases == 5 * (3 + 9) + 5 * 25


def test_broken_algorithm_gives_minimal_reproducer():
    report = verify(n_max=8, trials=0, algorithms={"sort": median_filter, "bad": broken_when_long})
    assert not report.ok
    bad = report.mismatch
    assert bad.algorithm == "bad"
    assert bad.k == 3 and len(bad.x) == 4
    assert bad.position == 1
    assert bad.got == bad.expected + 1
    text = bad.describe()
    assert "bad" in text and "k=3" in text and "position 1" in text


def test_shrink_on_random_failure():
    rng = np.random.default_rng(0)
    x = rng.integers(0, 3, 200)
    x[150] = 2
    sx, sk = shrink(broken_when_long, naive_median_filter, x, 9)
    assert sk == 3 and len(sx) == 4
    assert (broken_when_long(sx, sk) != naive_median_filter(sx, sk)).any()


def test_crash_counts_as_mismatch():
    def crashes(x, k):
        raise RuntimeError("boom")

    report = verify(n_max=1, trials=0, algorithms={"crash": crashes})
    assert not report.ok and "boom" in str(report.mismatch.got)
