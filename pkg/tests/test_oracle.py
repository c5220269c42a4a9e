import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import trees
from treecenter.generate import random_recursive_tree
from treecenter.oracle import (
    OracleTree,
    exhaustive_solve,
    greedy_centers,
    greedy_feasible,
    oracle_candidates,
)

alphas = st.fractions(min_value=0, max_value=300, max_denominator=12)


def test_greedy_examples(path3):
    assert greedy_feasible(path3, 3, 2).centers_used == 2
    assert greedy_feasible(path3, 8, 1).centers_used == 1
    assert greedy_feasible(path3, 0, 3).centers_used == 3
    assert not greedy_feasible(path3, -1, 3).feasible


def test_exhaustive_examples(path3, weighted_path3):
    assert exhaustive_solve(path3, 1).alpha_star == 4
    assert exhaustive_solve(path3, 3).alpha_star == 0
    assert exhaustive_solve(weighted_path3, 1).alpha_star == 3
    assert oracle_candidates(weighted_path3) == [0, 2, 3]


def test_exhaustive_guards():
    with pytest.raises(ValueError, match="too large"):
        exhaustive_solve(random_recursive_tree(151, 0), 2)


def covers(ot, placement, alpha) -> bool:
    for u in range(ot.t.n):
        w = ot.t.weights[u]
        if w and min(ot.point_distance(c, off, u) for c, _, off in placement) * w > alpha:
            return False
    return True


@given(trees(max_n=40, positive=True), alphas, st.integers(1, 8))
def test_greedy_placement_covers(t, alpha, p):
    ot = OracleTree(t)
    res = greedy_feasible(ot, alpha, p)
    assert res.centers_used == len(res.placement)
    assert covers(ot, res.placement, alpha)


@given(trees(max_n=40, positive=True), alphas, alphas)
def test_greedy_monotone(t, a, b):
    ot = OracleTree(t)
    lo, hi = min(a, b), max(a, b)
    assert len(greedy_centers(ot, hi)) <= len(greedy_centers(ot, lo))


@settings(max_examples=30)
@given(trees(min_n=2, max_n=30, positive=True))
def test_exhaustive_boundary_and_monotone(t):
    ot = OracleTree(t)
    cands = oracle_candidates(ot)
    prev = None
    for p in range(1, 6):
        a = exhaustive_solve(ot, p).alpha_star
        assert greedy_feasible(ot, a, p).feasible
        i = cands.index(a)
        if i:
            assert not greedy_feasible(ot, cands[i - 1], p).feasible
        if prev is not None:
            assert a <= prev
        prev = a
