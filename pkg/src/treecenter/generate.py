"""Seeded instance generators."""

from __future__ import annotations

import random

from .tree import TreeNetwork


def random_recursive_tree(n: int, seed: int, max_weight: int = 10, min_length: int = 1,
                          max_length: int = 10, positive: bool = False) -> TreeNetwork:
    """Vertex ``i`` attaches to a uniform earlier vertex; integer weights and lengths.

    ``positive`` resamples a vertex weight if all came out zero.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    weights = [rng.randint(0, max_weight) for _ in range(n)]
    edges = [(rng.randrange(i), i, rng.randint(min_length, max_length)) for i in range(1, n)]
    if positive and max_weight > 0 and not any(weights):
        weights[rng.randrange(n)] = rng.randint(1, max_weight)
    return TreeNetwork.build(weights, edges, check=False)


def complete_binary_tree(n: int, seed: int, max_weight: int = 10, min_length: int = 1,
                         max_length: int = 10) -> TreeNetwork:
    """Heap-shaped tree: vertex ``i`` hangs below ``(i - 1) // 2``."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    weights = [rng.randint(0, max_weight) for _ in range(n)]
    edges = [((i - 1) // 2, i, rng.randint(min_length, max_length)) for i in range(1, n)]
    return TreeNetwork.build(weights, edges, check=False)


def generate(n: int, seed: int, balanced: bool = False) -> TreeNetwork:
    return complete_binary_tree(n, seed) if balanced else random_recursive_tree(n, seed)


def oracle_corpus(count: int, seed: int = 0, n_range=(2, 150), p_range=(1, 8)):
    """Yield ``(index, tree, p)`` for seeded instances with at least one positive weight."""
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(*n_range)
        p = rng.randint(*p_range)
        yield i, random_recursive_tree(n, rng.randrange(2**31), positive=True), p
