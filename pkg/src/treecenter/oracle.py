"""Brute-force ground truth that shares nothing with the fast solvers.

Works on the input tree as given (no binarization), rooted at vertex 0, with
all-pairs distances from one traversal per source.  Centers are placed by the
deepest-constraint greedy: take the uncovered vertex whose admissible segment
ends lowest, put a center at the top of that segment, rescan coverage.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .tree import TreeNetwork

MAX_EXHAUSTIVE_N = 150


@dataclass(frozen=True)
class OracleResult:
    feasible: bool
    centers_used: int
    placement: list = field(default_factory=list)  # (child, parent, offset) on input ids


class OracleTree:
    """Distances and a rooting of an input tree, computed once."""

    def __init__(self, t: TreeNetwork):
        self.t = t
        n = t.n
        adj = t.adjacency()
        self.dist = []
        for s in range(n):
            row = [None] * n
            row[s] = t.weights[0] * 0
            stack = [s]
            while stack:
                u = stack.pop()
                for x, d in adj[u]:
                    if row[x] is None:
                        row[x] = row[u] + d
                        stack.append(x)
            self.dist.append(row)
        self.parent = [-1] * n
        self.up = [row[0] * 0 for row in self.dist]  # length of the edge to the parent
        seen = [False] * n
        seen[0] = True
        stack = [0]
        while stack:
            u = stack.pop()
            for x, d in adj[u]:
                if not seen[x]:
                    seen[x] = True
                    self.parent[x] = u
                    self.up[x] = d
                    stack.append(x)
        self.depth = self.dist[0]

    def highest_point(self, u: int, reach):
        """Point at most ``reach`` above ``u`` towards vertex 0, clamped there."""
        a, left = u, reach
        while a != 0 and left >= self.up[a]:
            left -= self.up[a]
            a = self.parent[a]
        if a == 0:
            return 0, left * 0
        return a, left

    def point_distance(self, a: int, off, x: int):
        if a == 0 or off == 0:
            return self.dist[a][x]
        p = self.parent[a]
        return min(self.dist[a][x] + off, self.dist[p][x] + self.up[a] - off)


def _as_oracle(t) -> OracleTree:
    return t if isinstance(t, OracleTree) else OracleTree(t)


def greedy_centers(t, alpha) -> list[tuple[int, object]]:
    """Centers the greedy places at cost ``alpha``, as (vertex, offset above it)."""
    ot = _as_oracle(t)
    w = ot.t.weights
    uncovered = {u for u in range(ot.t.n) if w[u] > 0}
    centers = []
    while uncovered:
        u = max(uncovered, key=lambda x: (ot.depth[x] - alpha / w[x], -x))
        a, off = ot.highest_point(u, alpha / w[u])
        centers.append((a, off))
        uncovered = {x for x in uncovered if ot.point_distance(a, off, x) * w[x] > alpha}
    return centers


def greedy_feasible(t, alpha, p: int) -> OracleResult:
    if alpha < 0:
        return OracleResult(False, 0, [])
    ot = _as_oracle(t)
    centers = greedy_centers(ot, alpha)
    placement = [(a, ot.parent[a] if a != 0 else 0, off) for a, off in centers]
    return OracleResult(len(centers) <= p, len(centers), placement)


def oracle_candidates(t) -> list:
    ot = _as_oracle(t)
    w = ot.t.weights
    vals = {w[0] * 0}
    for u in range(ot.t.n):
        if w[u] <= 0:
            continue
        for v in range(u + 1, ot.t.n):
            if w[v] > 0:
                vals.add(ot.dist[u][v] * w[u] * w[v] / (w[u] + w[v]))
    return sorted(vals)


def exhaustive_solve(t, p: int):
    """Smallest candidate cost that the greedy covers with ``p`` centers."""
    from .optimizer import Solution

    ot = _as_oracle(t)
    if ot.t.n > MAX_EXHAUSTIVE_N:
        raise ValueError(f"instance too large for exhaustive search (n={ot.t.n} > {MAX_EXHAUSTIVE_N})")
    if p < 1:
        raise ValueError("p must be at least 1")
    cands = oracle_candidates(ot)
    calls = 0
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        calls += 1
        if len(greedy_centers(ot, cands[mid])) <= p:
            hi = mid
        else:
            lo = mid + 1
    alpha = cands[lo]
    res = greedy_feasible(ot, alpha, p)
    return Solution(alpha, res.placement, calls + 1, len(cands), "oracle")
