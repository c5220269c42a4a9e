import random
from fractions import Fraction

import pytest
from hypothesis import given

from helpers import trees, walk_distances
from treecenter.tree import (
    NO_VERTEX,
    PointOnTree,
    TreeFormatError,
    TreeNetwork,
    binarize,
    parse_tree,
    validate,
)

PATH3 = "n 3\nv 0 1\nv 1 1\nv 2 1\ne 0 1 4\ne 1 2 4\n"


def test_parse_path():
    t = parse_tree(PATH3)
    assert t.n == 3
    assert [d for _, _, d in t.edges] == [4, 4]


def test_parse_rationals_comments_and_relabelling():
    t = parse_tree("# a comment\nn 2\nv b 3/2\nv a 0.25\ne a b 7/3\n")
    assert t.labels == ("b", "a")
    assert t.weights == (Fraction(3, 2), Fraction(1, 4))
    assert t.edges == ((1, 0, Fraction(7, 3)),)


def test_parse_wrong_edge_count():
    with pytest.raises(TreeFormatError, match="not a tree"):
        parse_tree("n 3\nv 0 1\nv 1 1\nv 2 1\ne 0 1 4\n")


def test_parse_negative_weight():
    with pytest.raises(TreeFormatError, match="negative weight"):
        parse_tree("n 2\nv 0 -1\nv 1 1\ne 0 1 4\n")


def test_parse_reports_line():
    with pytest.raises(TreeFormatError) as err:
        parse_tree("n 2\nv 0 1\nv 1 x\ne 0 1 4\n")
    assert err.value.line == 3


def test_validate_cases():
    assert validate(TreeNetwork.build([1, 1, 1], [(0, 1, 4), (1, 2, 4)])) == []
    dup = TreeNetwork(3, (1, 1, 1), ((0, 1, 1), (0, 1, 1)))
    assert any("cycle/multi-edge" in r for r in validate(dup))
    lonely = TreeNetwork(3, (1, 1, 1), ((0, 1, 1),))
    assert any("disconnected" in r for r in validate(lonely))


def test_star_gets_one_filler():
    t = TreeNetwork.build([1, 1, 1, 1], [(0, 1, 2), (0, 2, 3), (0, 3, 4)])
    b = binarize(t, 0)
    assert b.n == 5
    f = 4
    assert b.left[0] == 1 and b.right[0] == f
    assert b.weight[f] == 0 and b.length[f] == 0
    assert sorted(b.children(f)) == [2, 3]
    assert not b.is_original(f) and b.rep[f] == 0


def test_path_is_untouched(path3):
    b = binarize(path3, 0)
    assert b.n == 3
    assert b.parent == [NO_VERTEX, 0, 1]


def test_high_degree_distances():
    rng = random.Random(5)
    edges = [(0, i, rng.randint(1, 10)) for i in range(1, 8)]
    edges += [(rng.randrange(i), i, rng.randint(1, 10)) for i in range(8, 50)]
    t = TreeNetwork.build([rng.randint(0, 10) for _ in range(50)], edges)
    b = binarize(t, 0)
    assert b.n - t.n <= t.n - 2
    for s in range(t.n):
        ref = walk_distances(t, s)
        assert [b.vertex_distance(s, u) for u in range(t.n)] == ref


def test_distance_examples(path3):
    b = binarize(path3, 0)
    v1, v3 = b.point(0), b.point(2)
    assert b.distance(v1, v1) == 0
    assert b.distance(v1, v3) == 8
    assert b.distance(b.point(2, 1), b.point(2, 3)) == 2


def test_point_is_canonical(path3):
    b = binarize(path3, 0)
    assert b.point(2, 4) == PointOnTree(1, 0)
    assert b.point_above(2, 6) == PointOnTree(1, 2)
    with pytest.raises(ValueError):
        b.point_above(2, 9)


@given(trees(max_n=30))
def test_binarize_preserves_weights_and_distances(t):
    root = t.n // 2
    b = binarize(t, root)
    assert sorted(b.weight[: t.n]) == sorted(t.weights)
    assert all(w == 0 for w in b.weight[t.n:])
    assert all(len(b.children(v)) <= 2 for v in range(b.n))
    for v in range(b.n):
        if v != root:
            assert b.depth[v] == b.depth[b.parent[v]] + b.length[v]
    for s in range(0, t.n, 3):
        ref = walk_distances(t, s)
        assert all(b.vertex_distance(s, u) == ref[u] for u in range(t.n))


@given(trees(max_n=25))
def test_text_round_trip(t):
    again = parse_tree(t.to_text())
    assert again.weights == t.weights and again.edges == t.edges
