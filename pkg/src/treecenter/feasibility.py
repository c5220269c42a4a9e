"""The alpha-feasibility test.

Three passes over the binarized tree:

1. a truncated pre-order DFS that stops descending as soon as a subtree can
   be covered by one center placed on the edge above it (a peripheral
   center) or from above its parent (an untouched subtree);
2. the trimmed tree made of the descended vertices, the peripheral centers
   as dummy leaves, and the untouched siblings with their critical vertex;
3. a post-order Merge that places the remaining centers as close to the
   root as the uncovered vertices allow.

A subtree status is either covered (``PLUS``, with the distance from its
top down to the nearest center) or not (``MINUS``, with the distance above
its top within which a center is still needed).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import NamedTuple

from .cascade import CascadeIndex, SearchStats, cascade_locate
from .envelope import INF, build_envelopes
from .tree import NO_VERTEX, PointOnTree, RootedBinaryTree, TreeNetwork, binarize

PLUS = "+"
MINUS = "-"

FLOAT_EPS = 1e-9


@dataclass
class Preprocessed:
    """Everything a feasibility test reads; immutable once built."""

    network: TreeNetwork
    tree: RootedBinaryTree
    envelopes: object  # EnvelopeSet or spine.STD; both answer at_self/at_parent/reach
    cascade: CascadeIndex | None = None
    eps: object = 0

    @property
    def exact(self) -> bool:
        return self.eps == 0


def preprocess(network: TreeNetwork, root: int = 0, *, mode: str = "exact",
               tree_path: str = "balanced", cascade: bool = False) -> Preprocessed:
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "float":
        network = network.as_float()
    tree = binarize(network, root)
    eps = FLOAT_EPS if mode == "float" else 0
    if tree_path == "std":
        from .spine import build_std
        return Preprocessed(network, tree, build_std(tree), None, eps)
    if tree_path != "balanced":
        raise ValueError(f"unknown tree path {tree_path!r}")
    es = build_envelopes(tree)
    ci = CascadeIndex(es) if cascade else None
    return Preprocessed(network, tree, es, ci, eps)


@dataclass(frozen=True)
class PeripheralCenter:
    location: PointOnTree
    subtree_root: int
    critical: int


@dataclass
class DFSResult:
    alpha: object
    p: int
    trivial: bool = False
    infeasible: bool = False
    centers: list[PeripheralCenter] = field(default_factory=list)
    visited: int = 0
    descended: list[int] = field(default_factory=list)
    clean: dict = field(default_factory=dict)  # vertex -> (need above it, critical vertex)
    comparisons: int = 0


def find_peripheral_centers(pre: Preprocessed, alpha, p: int) -> DFSResult:
    """Truncated pre-order DFS; stops early once ``p + 1`` peripheral centers exist.

    ``visited`` counts the non-root vertices the search examined.
    """
    tree = pre.tree
    es = pre.envelopes
    ci = pre.cascade
    at_self, at_parent = es.at_self, es.at_parent
    left, right = tree.left, tree.right
    bound = alpha + pre.eps
    res = DFSResult(alpha, p)
    root = tree.root
    if at_self[root] <= bound:
        res.trivial = True
        return res
    res.descended.append(root)
    stats = SearchStats() if ci is not None else None
    handles = {root: ci.locate_root(alpha, stats)} if ci is not None else None
    stack = [c for c in (right[root], left[root]) if c != NO_VERTEX]
    centers = res.centers
    while stack:
        v = stack.pop()
        res.visited += 1
        if handles is not None:
            h = cascade_locate(ci, alpha, v, handles[tree.parent[v]], stats)
            handles[v] = h
        if at_self[v] > bound:
            res.descended.append(v)
            r, l = right[v], left[v]
            if r != NO_VERTEX:
                stack.append(r)
            if l != NO_VERTEX:
                stack.append(l)
            continue
        found = ci.reach(h, alpha) if handles is not None else es.reach(v, alpha, pre.eps)
        t, crit = found
        if at_parent[v] > bound:
            centers.append(PeripheralCenter(tree.point(v, t), v, crit))
            if len(centers) > p:
                res.infeasible = True
                break
        else:
            res.clean[v] = (t, crit)
    if stats is not None:
        res.comparisons = stats.comparisons
    return res


@dataclass
class TrimmedTree:
    """Descended vertices plus what hangs off them.

    ``second_type`` maps an untouched child to (need above it, critical
    vertex); ``dummies`` maps a peripheral subtree root to its center.
    """

    first_type: list[int]
    second_type: dict
    dummies: dict

    def __len__(self) -> int:
        return len(self.first_type) + len(self.second_type) + len(self.dummies)


def build_trimmed_tree(dfs: DFSResult, tree: RootedBinaryTree) -> TrimmedTree:
    if dfs.infeasible:
        raise ValueError("no trimmed tree for an infeasible DFS result")
    first = set(dfs.descended)
    second = {}
    for v in dfs.descended:
        for c in tree.children(v):
            if c in dfs.clean:
                second[c] = dfs.clean[c]
    dummies = {pc.subtree_root: pc for pc in dfs.centers}
    assert all(tree.parent[u] in first for u in dummies)
    return TrimmedTree(list(dfs.descended), second, dummies)


@dataclass(frozen=True)
class SubtreeStatus:
    sign: str
    delta: object
    critical: int = NO_VERTEX

    @property
    def covered(self) -> bool:
        return self.sign == PLUS


COVERED_EMPTY = SubtreeStatus(PLUS, INF)


class Child(NamedTuple):
    vertex: int
    status: SubtreeStatus
    length: object  # distance from the merged vertex down to this child


@dataclass
class MergeState:
    alpha: object
    eps: object = 0
    tree: RootedBinaryTree | None = None
    centers: list = field(default_factory=list)

    def place(self, vertex: int, offset):
        if self.tree is not None:
            self.centers.append(self.tree.point(vertex, offset))
        else:
            self.centers.append(PointOnTree(vertex, offset))


def merge_step(v: int, weight, left: Child | None, right: Child | None, state: MergeState) -> SubtreeStatus:
    """Combine the statuses of ``v``'s trimmed children into ``v``'s status."""
    alpha, eps = state.alpha, state.eps
    reach, reach_crit = INF, NO_VERTEX
    need, need_crit = INF, NO_VERTEX
    for ch in (left, right):
        if ch is None:
            continue
        st, d = ch.status, ch.length
        if st.sign == MINUS:
            s = st.delta
            if s < 0:
                raise ValueError(f"negative need below vertex {v}")
            if s + eps < d:
                state.place(ch.vertex, s)
                h = d - s
                if h < reach:
                    reach, reach_crit = h, st.critical
            elif s - d < need:
                need, need_crit = s - d, st.critical
        elif st.sign == PLUS:
            h = st.delta + d
            if h < reach:
                reach, reach_crit = h, st.critical
        else:
            raise ValueError(f"bad status {st.sign!r} below vertex {v}")
    own = alpha / weight if weight > 0 else INF
    covers_v = weight == 0 or reach * weight <= alpha + eps
    if covers_v and reach <= need + eps:
        return SubtreeStatus(PLUS, reach, reach_crit)
    if own < need:
        return SubtreeStatus(MINUS, own, v)
    return SubtreeStatus(MINUS, need, need_crit)


@dataclass
class FeasibilityResult:
    feasible: bool
    alpha: object
    p: int
    centers: list[PointOnTree]
    count: int
    visited: int = 0
    peripheral: int = 0
    trimmed_size: int = 0
    comparisons: int = 0
    root_center: bool = False

    def __bool__(self) -> bool:
        return self.feasible


def feasibility_test(pre: Preprocessed, alpha, p: int) -> FeasibilityResult:
    """Decide whether ``p`` centers can alpha-cover every vertex (costs ``<= alpha``)."""
    if p < 1:
        raise ValueError("p must be at least 1")
    if alpha < 0:
        return FeasibilityResult(False, alpha, p, [], 0)
    tree = pre.tree
    dfs = find_peripheral_centers(pre, alpha, p)
    if dfs.trivial:
        return FeasibilityResult(True, alpha, p, [tree.point(tree.root)], 1, dfs.visited,
                                 root_center=True)
    if dfs.infeasible:
        return FeasibilityResult(False, alpha, p, [pc.location for pc in dfs.centers],
                                 len(dfs.centers), dfs.visited, len(dfs.centers),
                                 comparisons=dfs.comparisons)
    tt = build_trimmed_tree(dfs, tree)
    state = MergeState(alpha, pre.eps, tree, [pc.location for pc in dfs.centers])
    status: dict[int, SubtreeStatus] = {}
    for u, (t, crit) in tt.second_type.items():
        status[u] = COVERED_EMPTY if t == INF else SubtreeStatus(MINUS, t, crit)
    weight, length = tree.weight, tree.length
    for v in reversed(tt.first_type):
        kids = []
        for c in (tree.left[v], tree.right[v]):
            if c == NO_VERTEX:
                kids.append(None)
            elif c in tt.dummies:
                pc = tt.dummies[c]
                d = length[c] - pc.location.offset
                kids.append(Child(c, SubtreeStatus(PLUS, d - d, pc.critical), d))
            else:
                kids.append(Child(c, status.pop(c), length[c]))
        status[v] = merge_step(v, weight[v], kids[0], kids[1], state)
        if len(state.centers) > p:
            return FeasibilityResult(False, alpha, p, state.centers, len(state.centers),
                                     dfs.visited, len(dfs.centers), len(tt), dfs.comparisons)
    final = status[tree.root]
    root_center = False
    if final.sign == MINUS:
        state.place(tree.root, 0)
        root_center = True
    count = len(state.centers)
    return FeasibilityResult(count <= p, alpha, p, state.centers, count, dfs.visited,
                             len(dfs.centers), len(tt), dfs.comparisons, root_center)


def min_centers(pre: Preprocessed, alpha) -> int:
    """Centers the root-centric strategy uses at cost ``alpha`` (no budget)."""
    return feasibility_test(pre, alpha, sys.maxsize).count
