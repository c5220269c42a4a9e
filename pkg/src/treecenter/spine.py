"""Spine tree decomposition for unbalanced trees.

Starting at the root, follow the child whose subtree has the most leaves
(ties go to the smaller id) down to a leaf; that path is a spine.  Every
child hanging off a spine starts a spine one level deeper.  Spine vertices
are listed bottom first, so "left" is away from the parent spine and
"right" is towards it (towards the root for the top spine).

Each spine gets a weight-balanced search tree whose leaves are its
vertices, a leaf weighing one plus the size of the branches hanging there.
A node spanning positions ``lo..hi`` stores two side envelopes over the
branches in its span, the spine vertices included:

* ``E_L(t)``: largest cost seen from ``t`` above the node's topmost vertex;
* ``E_R(t)``: largest cost seen from ``t`` below its bottommost vertex.

``E_v`` for a spine vertex is the maximum of ``E_L`` over the O(log n)
nodes that tile the spine prefix ending at ``v``, shifted to ``v``.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from operator import itemgetter

from .envelope import Envelope, Line, upper_hull
from .tree import NO_VERTEX, RootedBinaryTree


@dataclass
class SpineSearchTreeNode:
    spine: int
    lo: int
    hi: int
    v_L: int
    v_R: int
    left: "SpineSearchTreeNode | None" = None
    right: "SpineSearchTreeNode | None" = None
    parent: "SpineSearchTreeNode | None" = None
    E_L: Envelope | None = None
    E_R: Envelope | None = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None


@dataclass
class Spine:
    level: int
    vertices: list[int]  # bottom (leaf) first
    attach: int = NO_VERTEX
    root: SpineSearchTreeNode | None = None


@dataclass
class STD:
    tree: RootedBinaryTree
    spines: list[Spine]
    where: list[tuple[int, int]]  # vertex -> (spine index, position)
    leaf_node: list[SpineSearchTreeNode]
    at_self: list = field(default_factory=list)
    at_parent: list = field(default_factory=list)
    prefix: list = field(default_factory=list)  # vertex -> [(E_L, shift)]

    def by_level(self) -> dict[int, list[Spine]]:
        out: dict[int, list[Spine]] = {}
        for s in self.spines:
            out.setdefault(s.level, []).append(s)
        return out

    def value(self, v: int, t):
        """``E_v(t)`` from the prefix tiling."""
        return max(env.value(t + shift) for env, shift in self.prefix[v])

    def reach(self, v: int, alpha, eps=0):
        """Same contract as :meth:`Envelope.reach`, answered from the tiling."""
        best, crit = None, None
        for env, shift in self.prefix[v]:
            r = env.reach(alpha, eps)
            if r is None:
                return None
            t, u = r
            t = t - shift
            if t < 0:
                if t < -eps:
                    return None
                t = t * 0
            if best is None or t < best:
                best, crit = t, u
        return best, crit

    def dump(self) -> str:
        rows = []
        for s in self.spines:
            att = "none" if s.attach == NO_VERTEX else str(s.attach)
            rows.append(f"spine {s.level}: {' '.join(map(str, s.vertices))} @attach={att}")
        return "\n".join(rows) + "\n"


def _leaf_counts(tree: RootedBinaryTree) -> list[int]:
    leaves = [0] * tree.n
    for v in reversed(tree.preorder):
        kids = tree.children(v)
        leaves[v] = 1 if not kids else sum(leaves[c] for c in kids)
    return leaves


def _sizes(tree: RootedBinaryTree) -> list[int]:
    size = [1] * tree.n
    for v in reversed(tree.preorder):
        if tree.parent[v] != NO_VERTEX:
            size[tree.parent[v]] += size[v]
    return size


def _heavy_child(tree: RootedBinaryTree, leaves: list[int], v: int) -> int:
    kids = tree.children(v)
    if not kids:
        return NO_VERTEX
    best = min(kids, key=lambda c: (-leaves[c], c))
    for c in kids:
        assert leaves[best] >= leaves[c]
    return best


def _balanced_tree(spine_id: int, verts: list[int], weights: list[int]) -> tuple:
    """Weight-balanced search tree over ``verts``; returns (root, leaf per position)."""
    prefix = [0]
    for x in weights:
        prefix.append(prefix[-1] + x)
    leaves: list = [None] * len(verts)
    root = SpineSearchTreeNode(spine_id, 0, len(verts) - 1, verts[0], verts[-1])
    stack = [root]
    while stack:
        node = stack.pop()
        lo, hi = node.lo, node.hi
        if lo == hi:
            leaves[lo] = node
            continue
        # split after k, k in [lo, hi-1], minimizing the heavier side
        half = (prefix[lo] + prefix[hi + 1]) / 2
        k = min(max(bisect_left(prefix, half, lo + 1, hi + 1) - 1, lo), hi - 1)
        best = None
        for cand in (k - 1, k, k + 1):
            if lo <= cand <= hi - 1:
                heavier = max(prefix[cand + 1] - prefix[lo], prefix[hi + 1] - prefix[cand + 1])
                if best is None or heavier < best[0]:
                    best = (heavier, cand)
        k = best[1]
        node.left = SpineSearchTreeNode(spine_id, lo, k, verts[lo], verts[k], parent=node)
        node.right = SpineSearchTreeNode(spine_id, k + 1, hi, verts[k + 1], verts[hi], parent=node)
        stack.extend((node.right, node.left))
    return root, leaves


def build_std(tree: RootedBinaryTree, envelopes: bool = True) -> STD:
    leaves = _leaf_counts(tree)
    size = _sizes(tree)
    spines: list[Spine] = []
    where: list = [None] * tree.n
    leaf_node: list = [None] * tree.n
    starts = [(tree.root, NO_VERTEX, 1)]
    i = 0
    while i < len(starts):
        s, attach, level = starts[i]
        i += 1
        path = []
        v = s
        while v != NO_VERTEX:
            path.append(v)
            h = _heavy_child(tree, leaves, v)
            for c in tree.children(v):
                if c != h:
                    starts.append((c, v, level + 1))
            v = h
        path.reverse()
        sid = len(spines)
        weights = [size[path[0]]] + [size[path[j]] - size[path[j - 1]] for j in range(1, len(path))]
        root, nodes = _balanced_tree(sid, path, weights)
        spines.append(Spine(level, path, attach, root))
        for pos, u in enumerate(path):
            where[u] = (sid, pos)
            leaf_node[u] = nodes[pos]
    std = STD(tree, spines, where, leaf_node)
    if envelopes:
        build_side_envelopes(std)
    return std


def _nodes_postorder(root: SpineSearchTreeNode) -> list[SpineSearchTreeNode]:
    out, stack = [], [root]
    while stack:
        node = stack.pop()
        out.append(node)
        if node.left is not None:
            stack.extend((node.left, node.right))
    out.reverse()
    return out


def _hull(lines: list[Line], owner: int) -> Envelope:
    if not lines:
        return Envelope.empty(owner)
    lines.sort(key=itemgetter(0))
    return Envelope.from_hull(owner, upper_hull(lines))


def build_side_envelopes(std: STD) -> STD:
    """Fill ``E_L``/``E_R`` for every node, deepest spines first, then the prefix tilings."""
    tree = std.tree
    depth, weight, length = tree.depth, tree.weight, tree.length
    for spine in reversed(std.spines):
        on_spine = set(spine.vertices)
        for node in _nodes_postorder(spine.root):
            if node.is_leaf:
                v = node.v_L
                lines = [Line(weight[v], weight[v] * 0, v)]
                for c in tree.children(v):
                    if c not in on_spine:
                        sub = std.spines[std.where[c][0]].root.E_L
                        lines.extend(sub.lines_above(length[c]))
                env = _hull(lines, v)
                node.E_L = node.E_R = env
                continue
            l, r = node.left, node.right
            up = depth[l.v_R] - depth[node.v_R]
            down = depth[node.v_L] - depth[r.v_L]
            node.E_L = _hull(l.E_L.lines_above(up) + r.E_L.lines, node.v_R)
            node.E_R = _hull(l.E_R.lines + r.E_R.lines_above(down), node.v_L)
    _build_prefix(std)
    return std


def _build_prefix(std: STD) -> None:
    tree = std.tree
    depth = tree.depth
    n = tree.n
    std.prefix = [None] * n
    std.at_self = [None] * n
    std.at_parent = [None] * n
    for spine in std.spines:
        for pos, v in enumerate(spine.vertices):
            tiles = []
            node = spine.root
            while True:
                if node.hi <= pos:
                    tiles.append(node)
                    break
                if node.is_leaf:
                    tiles.append(node)
                    break
                if pos >= node.right.lo:
                    tiles.append(node.left)
                    node = node.right
                else:
                    node = node.left
            std.prefix[v] = [(t.E_L, depth[t.v_R] - depth[v]) for t in tiles]
            std.at_self[v] = std.value(v, depth[v] * 0)
            if tree.parent[v] != NO_VERTEX:
                std.at_parent[v] = std.value(v, tree.length[v])


def std_max_depth(std: STD) -> int:
    """Most search-tree nodes on any path from a vertex's leaf node up through the spines."""
    best = 0
    total: dict[int, int] = {}
    for spine in std.spines:
        above = 0 if spine.attach == NO_VERTEX else total[spine.attach]
        for v in spine.vertices:
            count = 0
            node = std.leaf_node[v]
            while node is not None:
                count += 1
                node = node.parent
            total[v] = above + count
            best = max(best, total[v])
    return best
