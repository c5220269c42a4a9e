"""Fractional cascading over the envelope catalogs.

Each vertex's catalog is the value sequence of its envelope points (sorted,
since envelopes are nondecreasing).  The augmented catalog of ``v`` merges
its own catalog with every ``stride``-th element of each child's augmented
catalog, bottom-up.  Bridges map a position in a parent's augmented catalog
to the matching position in a child's, so that a root-to-leaf walk costs one
binary search plus at most ``stride`` comparisons per vertex.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .envelope import INF, EnvelopeSet
from .tree import NO_VERTEX


@dataclass(frozen=True)
class Handle:
    vertex: int
    index: int  # bisect_right position in the augmented catalog


@dataclass
class SearchStats:
    comparisons: int = 0


class CascadeIndex:
    def __init__(self, es: EnvelopeSet, stride: int = 3):
        if stride < 1:
            raise ValueError("stride must be positive")
        self.es = es
        self.stride = stride
        tree = es.tree
        n = tree.n
        self.ts: list = [None] * n
        self.values: list = [None] * n
        self.owners: list = [None] * n
        self.aug: list = [None] * n
        self.own: list = [None] * n
        self.bridge_left: list = [None] * n
        self.bridge_right: list = [None] * n
        for v in reversed(tree.preorder):
            ts, vals, owners = es.catalog(v)
            self.ts[v], self.values[v], self.owners[v] = ts, vals, owners
            tagged = [(x, 0) for x in vals]
            for c in (tree.left[v], tree.right[v]):
                if c != NO_VERTEX:
                    tagged.extend((x, 1) for x in self.aug[c][stride - 1::stride])
            tagged.sort(key=lambda p: p[0])
            aug = [x for x, _ in tagged]
            own = [0] * (len(aug) + 1)
            count = 0
            for i, (_, tag) in enumerate(tagged):
                if tag == 0:
                    count += 1
                own[i + 1] = count
            self.aug[v], self.own[v] = aug, own
            for c, store in ((tree.left[v], self.bridge_left), (tree.right[v], self.bridge_right)):
                if c == NO_VERTEX:
                    continue
                child = self.aug[c]
                store[v] = [bisect_left(child, x) for x in aug] + [len(child)]

    def total_size(self) -> int:
        return sum(len(a) for a in self.aug)

    def locate_root(self, alpha, stats: SearchStats | None = None) -> Handle:
        r = self.es.tree.root
        aug = self.aug[r]
        lo, hi = 0, len(aug)
        while lo < hi:
            mid = (lo + hi) // 2
            if stats is not None:
                stats.comparisons += 1
            if alpha < aug[mid]:
                hi = mid
            else:
                lo = mid + 1
        return Handle(r, lo)

    def own_position(self, h: Handle) -> int:
        """Number of points of ``E_v``'s own catalog with value ``<= alpha``."""
        return self.own[h.vertex][h.index]

    def reach(self, h: Handle, alpha):
        """(t, critical vertex) from a located handle; ``None`` if ``E_v(0) > alpha``."""
        v = h.vertex
        k = self.own[v][h.index]
        if k == 0:
            return None
        ts, vals, owners = self.ts[v], self.values[v], self.owners[v]
        if k == len(ts):
            env = self.es.envelopes[v]
            slope = env.tail_slope
            if slope == 0:
                return INF, owners[-1]
            return ts[-1] + (alpha - vals[-1]) / slope, owners[-1]
        t0, v0, t1, v1 = ts[k - 1], vals[k - 1], ts[k], vals[k]
        return t0 + (alpha - v0) * (t1 - t0) / (v1 - v0), owners[k - 1]


def build_cascade(es: EnvelopeSet, stride: int = 3) -> CascadeIndex:
    return CascadeIndex(es, stride)


def cascade_locate(ci: CascadeIndex, alpha, v: int, parent_handle: Handle,
                   stats: SearchStats | None = None) -> Handle:
    """Position of ``alpha`` in ``v``'s augmented catalog from its parent's position."""
    tree = ci.es.tree
    p = tree.parent[v]
    if p == NO_VERTEX or parent_handle.vertex != p:
        raise ValueError(f"handle for vertex {parent_handle.vertex} does not belong to parent of {v}")
    bridge = ci.bridge_left[p] if tree.left[p] == v else ci.bridge_right[p]
    aug = ci.aug[v]
    j = bridge[parent_handle.index]
    while j > 0:
        if stats is not None:
            stats.comparisons += 1
        if aug[j - 1] > alpha:
            j -= 1
        else:
            break
    return Handle(v, j)
