import math
import random
from bisect import bisect_right
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import brute_envelope, trees
from treecenter.cascade import CascadeIndex, SearchStats, build_cascade, cascade_locate
from treecenter.envelope import (
    VERTEX,
    Line,
    build_envelopes,
    combine,
    envelope_crossing_on_edge,
    leaf_envelope,
    upper_hull,
)
from treecenter.generate import complete_binary_tree, random_recursive_tree
from treecenter.tree import NO_VERTEX, RootedBinaryTree, TreeNetwork, binarize, path_tree


def sample_points(tree, v, rng, k=20):
    """``k`` points on the path from ``v`` to the root, both ends included."""
    top = tree.depth[v]
    ts = [Fraction(0), top] + [top * Fraction(rng.randint(0, 997), 997) for _ in range(k - 2)]
    return [tree.point_above(v, t) for t in ts]


def test_leaf_envelope(path3):
    b = binarize(path3, 0)
    env = leaf_envelope(b, 2)
    assert env.value(0) == 0
    assert env.value(8) == 8
    zero = binarize(path_tree([1, 1, 0], [4, 4]), 0)
    assert all(leaf_envelope(zero, 2).value(t) == 0 for t in (0, 3, 8))
    with pytest.raises(ValueError):
        leaf_envelope(b, 1)


def test_combine_one_child():
    # v (w=2) with one child 4 below it of weight 1
    b = binarize(TreeNetwork.build([2, 1], [(0, 1, 4)]), 0)
    env = combine(b, 0, leaf_envelope(b, 1), None)
    assert env.value(0) == 4
    assert env.value(2) == 6


def test_combine_two_children_cross():
    # child lines at v: slope 1 value 4, slope 3 value 0
    b = binarize(TreeNetwork.build([0, 1, 3], [(0, 1, 4), (0, 2, 0)]), 0)
    env = combine(b, 0, leaf_envelope(b, 1), leaf_envelope(b, 2))
    assert env.starts == [0, 2]
    assert env.values == [4, 6]
    for t in (Fraction(k, 4) for k in range(0, 40)):
        assert env.value(t) == max(t + 4, 3 * t)


def test_path_envelopes(path3):
    b = binarize(path3, 0)
    es = build_envelopes(b)
    assert es.at_parent[2] == 4
    assert es.at_parent[1] == 8
    assert es.evaluate(1, b.point(0)) == 8


def test_single_vertex():
    b = binarize(TreeNetwork.build([5], []), 0)
    es = build_envelopes(b)
    assert es.at_self[0] == 0
    assert [(p.position, p.value) for p in es.points(0)] == [(0, 0), (0, 0)]


def test_random_tree_against_brute_force():
    rng = random.Random(3)
    b = binarize(random_recursive_tree(200, 11), 0)
    es = build_envelopes(b)
    for _ in range(50):
        v = rng.randrange(b.n)
        x = sample_points(b, v, rng, 3)[2]
        assert es.evaluate(v, x) == brute_envelope(b, v, x)


def test_crossing_on_edge(path3):
    b = binarize(path3, 0)
    es = build_envelopes(b)
    assert envelope_crossing_on_edge(es, 2, 3).offset == 3
    assert envelope_crossing_on_edge(es, 1, 3) is None
    assert envelope_crossing_on_edge(es, 2, 0).offset == 0
    with pytest.raises(ValueError):
        envelope_crossing_on_edge(es, 0, 3)


def test_dump_golden(path3):
    es = build_envelopes(binarize(path3, 0))
    assert es.dump() == (
        "env 0: (0,8) (0,8)\n"
        "env 1: (4,4) (4,4) (0,8)\n"
        "env 2: (8,0) (8,0) (4,4) (0,8)\n"
    )


def test_markers_on_every_ancestor(path3):
    b = binarize(path3, 0)
    es = build_envelopes(b)
    marks = [p.position for p in es.points(2) if p.kind == VERTEX]
    assert marks == [8, 4, 0]


def test_upper_hull_drops_dominated():
    lines = [Line(1, 0, 0), Line(1, 5, 1), Line(2, 0, 2), Line(3, -100, 3)]
    hull = upper_hull(sorted(lines, key=lambda ln: ln.slope))
    assert [ln.vertex for ln in hull] == [1, 2, 3]


def _swapped(tree: RootedBinaryTree) -> RootedBinaryTree:
    left, right = list(tree.right), list(tree.left)
    pre, stack = [], [tree.root]
    while stack:
        v = stack.pop()
        pre.append(v)
        stack.extend(c for c in (right[v], left[v]) if c != NO_VERTEX)
    return RootedBinaryTree(tree.root, tree.weight, tree.parent, left, right, tree.length,
                            tree.depth, tree.level, tree.rep, tree.n_original, pre)


@given(trees(max_n=40))
def test_child_order_does_not_matter(t):
    b = binarize(t, 0)
    one, two = build_envelopes(b), build_envelopes(_swapped(b))
    for v in range(b.n):
        e1, e2 = one[v], two[v]
        for x in set(e1.starts) | set(e2.starts) | {b.depth[v]}:
            assert e1.value(x) == e2.value(x)


@given(trees(max_n=30), st.fractions(0, 200))
def test_crossing_hits_alpha_exactly(t, alpha):
    b = binarize(t, 0)
    es = build_envelopes(b)
    for v in range(b.n):
        if v == b.root:
            continue
        x = envelope_crossing_on_edge(es, v, alpha)
        if x is None:
            continue
        assert x.vertex == v
        assert es.evaluate(v, x) == alpha
        # nondecreasing, so nothing between v and x exceeds alpha
        assert es.evaluate(v, b.point(v, x.offset / 2)) <= alpha


@pytest.mark.parametrize("n", [2**k - 1 for k in (5, 8, 11)])
def test_total_points_bound_balanced(n):
    es = build_envelopes(binarize(complete_binary_tree(n, n), 0))
    assert es.total_points() <= 4 * n * math.log2(n + 1)


def test_cascade_full_merge_on_path():
    b = binarize(path_tree([1, 3, 2, 5], [2, 1, 4]), 0)
    es = build_envelopes(b)
    ci = build_cascade(es, stride=1)
    root_aug = ci.aug[b.root]
    for v in range(b.n):
        for x in ci.values[v]:
            assert x in root_aug


def test_cascade_single_vertex():
    ci = build_cascade(build_envelopes(binarize(TreeNetwork.build([2], []), 0)))
    assert ci.aug == [[0, 0]]
    assert ci.locate_root(-1).index == 0
    assert ci.locate_root(1).index == 2


def _walk(ci, alpha, leaf, stats=None):
    tree = ci.es.tree
    path = [leaf] + tree.ancestors(leaf)
    path.reverse()
    h = ci.locate_root(alpha, stats)
    out = [h]
    for v in path[1:]:
        h = cascade_locate(ci, alpha, v, h, stats)
        out.append(h)
    return path, out


def test_cascade_matches_binary_search():
    rng = random.Random(8)
    b = binarize(random_recursive_tree(200, 4), 0)
    es = build_envelopes(b)
    ci = CascadeIndex(es)
    leaves = [v for v in range(b.n) if b.is_leaf(v)]
    for _ in range(100):
        alpha = Fraction(rng.randint(-10, 4000), rng.randint(1, 5))
        path, handles = _walk(ci, alpha, rng.choice(leaves))
        for v, h in zip(path, handles):
            assert h.index == bisect_right(ci.aug[v], alpha)
            assert ci.own_position(h) == bisect_right(ci.values[v], alpha)
            assert ci.reach(h, alpha) == es.reach(v, alpha)


def test_cascade_boundaries(path3):
    b = binarize(path3, 0)
    ci = CascadeIndex(build_envelopes(b))
    _, low = _walk(ci, -1, 2)
    assert all(h.index == 0 for h in low)
    path, high = _walk(ci, 100, 2)
    assert all(h.index == len(ci.aug[v]) for v, h in zip(path, high))


def test_cascade_rejects_foreign_handle(path3):
    b = binarize(path3, 0)
    ci = CascadeIndex(build_envelopes(b))
    h = ci.locate_root(3)
    with pytest.raises(ValueError):
        cascade_locate(ci, 3, 2, h)


def test_cascade_comparison_budget():
    rng = random.Random(9)
    b = binarize(random_recursive_tree(500, 6), 0)
    ci = CascadeIndex(build_envelopes(b))
    total = ci.total_size()
    leaves = [v for v in range(b.n) if b.is_leaf(v)]
    for _ in range(100):
        stats = SearchStats()
        alpha = Fraction(rng.randint(0, 5000), rng.randint(1, 3))
        path, _ = _walk(ci, alpha, rng.choice(leaves), stats)
        assert stats.comparisons <= 3 * (math.log2(total) + len(path))
