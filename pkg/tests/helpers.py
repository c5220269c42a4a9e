"""Slow reference computations shared by the tests."""

from fractions import Fraction

from hypothesis import strategies as st

from treecenter.tree import TreeNetwork


def walk_distances(t: TreeNetwork, s: int) -> list:
    adj = t.adjacency()
    dist = [None] * t.n
    dist[s] = Fraction(0)
    stack = [s]
    while stack:
        u = stack.pop()
        for x, d in adj[u]:
            if dist[x] is None:
                dist[x] = dist[u] + d
                stack.append(x)
    return dist


def brute_envelope(tree, v, point):
    """max over the subtree of ``v`` of cost at ``point`` (a PointOnTree above ``v``)."""
    return max(tree.weight[u] * tree.distance(tree.point(u), point) for u in tree.subtree(v))


def worst_cost(tree, centers):
    """Largest weighted distance from a vertex to its nearest center (binarized ids)."""
    worst = Fraction(0)
    for u in range(tree.n):
        if tree.weight[u] == 0:
            continue
        near = min(tree.distance(tree.point(u), c) for c in centers)
        worst = max(worst, near * tree.weight[u])
    return worst


@st.composite
def trees(draw, min_n=1, max_n=40, max_weight=10, positive=False):
    n = draw(st.integers(min_n, max_n))
    weights = draw(st.lists(st.integers(0, max_weight), min_size=n, max_size=n))
    if positive and not any(weights):
        weights[draw(st.integers(0, n - 1))] = draw(st.integers(1, max(max_weight, 1)))
    edges = [(draw(st.integers(0, i - 1)), i, draw(st.integers(1, 10))) for i in range(1, n)]
    return TreeNetwork.build(weights, edges)


def nearest_center_distances(tree, centers) -> list:
    """Distance from every vertex to its closest center, via two sweeps over the tree."""
    inf = None
    best = [inf] * tree.n

    def relax(v, d):
        if best[v] is None or d < best[v]:
            best[v] = d

    for c in centers:
        relax(c.vertex, c.offset)
        if c.vertex != tree.root:
            relax(tree.parent[c.vertex], tree.length[c.vertex] - c.offset)
    order = tree.preorder
    for v in reversed(order):
        if v != tree.root and best[v] is not None:
            relax(tree.parent[v], best[v] + tree.length[v])
    for v in order:
        if v != tree.root and best[tree.parent[v]] is not None:
            relax(v, best[tree.parent[v]] + tree.length[v])
    return best


def distances_from_point(tree, x) -> list:
    """Distance from point ``x`` to every vertex."""
    return nearest_center_distances(tree, [x])


# criterion label -> (passed, detail); printed at the end of the session
ACCEPTANCE: dict = {}
