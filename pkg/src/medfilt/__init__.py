from .core import INF, WindowError, WindowSpec, make_window_spec, stable_sort_permutation

__all__ = [
    "INF",
    "WindowError",
    "WindowSpec",
    "make_window_spec",
    "median_filter",
    "sort_via_median_filter",
    "stable_sort_permutation",
]


def __getattr__(name):
    # the filter pulls in numba; load it on first use so light commands start fast
    if name in ("median_filter", "sort_via_median_filter"):
        from . import filter as _filter

        return getattr(_filter, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
