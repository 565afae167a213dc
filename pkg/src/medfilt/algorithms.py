"""Name -> implementation registry shared by the CLI, verifier and benchmarks."""

from .baselines import heap_median_filter, move_median_filter, naive_median_filter, tree_median_filter
from .filter import median_filter

ALGORITHMS = {
    "sort": median_filter,
    "heap": heap_median_filter,
    "tree": tree_median_filter,
    "move": move_median_filter,
    "naive": naive_median_filter,
}


def get(name: str):
    try:
        return ALGORITHMS[name]
    except KeyError:
        raise ValueError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}") from None
