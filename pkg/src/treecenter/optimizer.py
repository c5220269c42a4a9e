"""Optimal cost search.

Solver A binary-searches the sorted set of pairwise equal costs, which is
known to contain the optimum.  Solver B simulates the bottom-up Merge greedy
at the unknown optimum: every comparison the greedy would make becomes a
threshold test ``alpha* >= c`` answered by a feasibility test, and the
interval of still-possible optima shrinks until its upper end is the answer.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .feasibility import Preprocessed, feasibility_test, preprocess
from .tree import NO_VERTEX, TreeNetwork

MINUS = "-"
PLUS = "+"
NOTHING = (PLUS, None)  # subtree with no weight: covered, no center


@dataclass
class Bounds:
    """``low`` is infeasible (or ``-inf``), ``high`` is feasible."""

    low: object
    high: object

    def update(self, alpha, feasible: bool) -> None:
        if feasible:
            if alpha < self.high:
                self.high = alpha
        elif alpha > self.low:
            self.low = alpha
        if not self.low < self.high:
            raise AssertionError(f"bounds crossed: {self.low} >= {self.high}")


@dataclass(frozen=True)
class CandidateCost:
    value: object
    pair: tuple


@dataclass
class Solution:
    alpha_star: object
    centers: list  # (child, parent, offset from child) on input ids; the root is (r, r, 0)
    feasibility_calls: int = 0
    candidates: int = 0
    algorithm: str = ""

    def to_dict(self, labels=None) -> dict:
        return {
            "alpha": _rational(self.alpha_star),
            "alpha_float": float(self.alpha_star),
            "centers": [{"edge": [_label(labels, c), _label(labels, p)],
                         "offset_from_child": _rational(off)} for c, p, off in self.centers],
            "stats": {"feasibility_calls": self.feasibility_calls, "candidates": self.candidates},
        }

    def to_json(self, labels=None) -> str:
        return json.dumps(self.to_dict(labels))


def _rational(x) -> dict:
    q = x if isinstance(x, Fraction) else Fraction(x)
    return {"num": q.numerator, "den": q.denominator}


def _label(labels, v: int):
    if not labels:
        return v
    s = labels[v]
    try:
        return int(s)
    except ValueError:
        return s


def solution_from_dict(doc: dict) -> Solution:
    """Inverse of :meth:`Solution.to_dict` (labels stay as written)."""
    a = doc["alpha"]
    centers = [(c["edge"][0], c["edge"][1],
                Fraction(c["offset_from_child"]["num"], c["offset_from_child"]["den"]))
               for c in doc["centers"]]
    stats = doc.get("stats", {})
    return Solution(Fraction(a["num"], a["den"]), centers, stats.get("feasibility_calls", 0),
                    stats.get("candidates", 0))


def equal_cost(d, wu, wv):
    """Cost at the point between ``u`` and ``v`` where both pay the same."""
    if wu == 0 or wv == 0:
        return d * 0
    return d * wu * wv / (wu + wv)


def equal_cost_above(da, wa, db, wb):
    """Cost at which the cost lines of ``a`` and ``b`` cross above their common ancestor.

    ``da``/``db`` are their distances to that ancestor.  ``None`` when the
    lines are parallel or when the heavier vertex is dearer everywhere above.
    """
    if wa == wb:
        return None
    if wa > wb:
        da, wa, db, wb = db, wb, da, wa
    if da * wa < db * wb:
        return None
    return (da - db) * wa * wb / (wb - wa)


def equal_cost_with_vertex(da, wa, wv):
    """Crossing cost of ``a``'s line with the line of the ancestor it is measured from."""
    if wv <= wa:
        return None
    return da * wa * wv / (wv - wa)


def candidate_costs(t: TreeNetwork) -> list[CandidateCost]:
    """Pairwise equal costs plus 0, ascending, one entry per distinct value."""
    dist = _all_pairs(t)
    w = t.weights
    best: dict = {}
    zero = w[0] * 0 if t.n else 0
    best[zero] = CandidateCost(zero, (0, 0))
    for u in range(t.n):
        for v in range(u + 1, t.n):
            c = equal_cost(dist[u][v], w[u], w[v])
            if c not in best:
                best[c] = CandidateCost(c, (u, v))
    return [best[c] for c in sorted(best)]


def _all_pairs(t: TreeNetwork) -> list[list]:
    adj = t.adjacency()
    out = []
    for s in range(t.n):
        row = [None] * t.n
        row[s] = t.weights[0] * 0
        stack = [s]
        while stack:
            u = stack.pop()
            for x, d in adj[u]:
                if row[x] is None:
                    row[x] = row[u] + d
                    stack.append(x)
        out.append(row)
    return out


def candidate_values_float(t: TreeNetwork):
    """Distinct candidate costs as a float numpy array (benchmarks only)."""
    import numpy as np

    tree = preprocess(t, mode="float").tree
    order = [v for v in tree.preorder if tree.is_original(v)]
    pos = [0] * tree.n
    for i, v in enumerate(tree.preorder):
        pos[v] = i
    size = [1] * tree.n
    for v in reversed(tree.preorder):
        if tree.parent[v] != NO_VERTEX:
            size[tree.parent[v]] += size[v]
    pre_depth = np.array([float(tree.depth[v]) for v in tree.preorder])
    w = np.array([float(tree.weight[v]) for v in tree.preorder])
    chunks = [np.zeros(1)]
    for s in order:
        if tree.weight[s] <= 0:
            continue
        lca_depth = np.zeros(tree.n)
        chain = [s] + tree.ancestors(s)
        for a in reversed(chain):
            lca_depth[pos[a]:pos[a] + size[a]] = float(tree.depth[a])
        row = pre_depth + float(tree.depth[s]) - 2 * lca_depth
        ws = float(tree.weight[s])
        mask = w > 0
        chunks.append(row[mask] * ws * w[mask] / (ws + w[mask]))
    return np.unique(np.concatenate(chunks))


def _placement(pre: Preprocessed, res) -> list:
    out = []
    for x in res.centers:
        c, p, off = pre.tree.to_original(x)
        out.append((c, p, off))
    return out


def solve_candidate(t: TreeNetwork, p: int, pre: Preprocessed | None = None,
                    candidates: list | None = None) -> Solution:
    """Smallest feasible candidate cost, by binary search."""
    if p < 1:
        raise ValueError("p must be at least 1")
    pre = pre or preprocess(t)
    if p >= t.positive_count():
        res = feasibility_test(pre, pre.tree.weight[0] * 0, p)
        return Solution(res.alpha, _placement(pre, res), 1, 0, "candidate")
    if candidates is None:
        if pre.exact:
            candidates = [c.value for c in candidate_costs(t)]
        else:
            candidates = candidate_values_float(t).tolist()
    calls = 0
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        calls += 1
        if feasibility_test(pre, candidates[mid], p).feasible:
            hi = mid
        else:
            lo = mid + 1
    res = feasibility_test(pre, candidates[lo], p)
    calls += 1
    if not res.feasible:
        raise AssertionError("largest candidate is infeasible")
    return Solution(candidates[lo], _placement(pre, res), calls, len(candidates), "candidate")


class _Search:
    """Threshold oracle for ``alpha* >= c`` backed by memoized feasibility tests."""

    def __init__(self, pre: Preprocessed, p: int, debug: bool = False):
        self.pre, self.p, self.debug = pre, p, debug
        es = pre.envelopes
        self.bounds = Bounds(-math.inf, es.at_self[pre.tree.root])
        self.memo: dict = {}
        self.calls = 0

    def feasible(self, c) -> bool:
        if c not in self.memo:
            self.calls += 1
            self.memo[c] = feasibility_test(self.pre, c, self.p).feasible
        return self.memo[c]

    def ge(self, c) -> bool:
        b = self.bounds
        if c <= b.low:
            return True
        if c >= b.high:
            return False
        ok = self.feasible(c)
        b.update(c, ok)
        if self.debug:
            self._verify()
        return not ok

    def settle(self, values) -> None:
        """Pin the bounds around every value with O(log k) tests."""
        vals = sorted({c for c in values if self.bounds.low < c < self.bounds.high})
        while vals:
            self.ge(vals[len(vals) // 2])
            b = self.bounds
            vals = [c for c in vals if b.low < c < b.high]

    def _verify(self) -> None:
        b = self.bounds
        if not feasibility_test(self.pre, b.high, self.p).feasible:
            raise AssertionError(f"upper bound {b.high} is not feasible")
        if b.low != -math.inf and feasibility_test(self.pre, b.low, self.p).feasible:
            raise AssertionError(f"lower bound {b.low} is feasible")


def _tighter_rule(da, wa, db, wb):
    """(threshold, pick if alpha* >= threshold, pick otherwise) for two uncovered vertices."""
    if wa == wb:
        k = 0 if da >= db else 1
        return None, k, k
    light, heavy = (0, 1) if wa < wb else (1, 0)
    crossing = equal_cost_above(da, wa, db, wb)
    if crossing is None:
        return None, heavy, heavy
    return crossing, heavy, light


def resolve_critical_vertex(da, wa, db, wb, ge) -> int:
    """Which of two uncovered vertices is tighter at the optimum: 0 for ``a``, 1 for ``b``.

    The tighter one needs a center closer above the common ancestor they are
    measured from (``da``/``db`` are their distances to it).  ``ge(c)``
    answers ``alpha* >= c``; dominated lines cost no question.
    """
    c, hi, lo = _tighter_rule(da, wa, db, wb)
    if c is None:
        return hi
    return hi if ge(c) else lo


def _nearer_rule(da, wa, db, wb):
    """Same shape as :func:`_tighter_rule`, for two placed centers below an ancestor."""
    if wa == wb:
        k = 0 if da <= db else 1
        return None, k, k
    if wa < wb:
        # a's center rises faster with alpha; it is nearer past the crossing
        return (da - db) * wa * wb / (wb - wa), 0, 1
    return (db - da) * wb * wa / (wa - wb), 1, 0


def _merge_at(tree, status, v):
    """Merge greedy at ``v``; yields thresholds and receives ``alpha* >= threshold``."""
    w, depth = tree.weight, tree.depth
    minus, plus = [], []
    for c in (tree.left[v], tree.right[v]):
        if c == NO_VERTEX:
            continue
        kind, g = status.pop(c)
        if g is None:
            continue
        if kind == MINUS:
            below = yield (depth[g] - depth[v]) * w[g]
            (minus if below else plus).append(g)
        else:
            plus.append(g)
    if w[v] > 0:
        minus.append(v)
    tight = None
    for g in minus:
        if tight is None:
            tight = g
            continue
        c, hi, lo = _tighter_rule(depth[tight] - depth[v], w[tight], depth[g] - depth[v], w[g])
        pick = hi if c is None or (yield c) else lo
        tight = (tight, g)[pick]
    near = None
    for g in plus:
        if near is None:
            near = g
            continue
        c, hi, lo = _nearer_rule(depth[near] - depth[v], w[near], depth[g] - depth[v], w[g])
        pick = hi if c is None or (yield c) else lo
        near = (near, g)[pick]
    if near is None:
        return (MINUS, tight) if tight is not None else NOTHING
    if tight is None:
        return PLUS, near
    gap = depth[tight] + depth[near] - 2 * depth[v]
    covered = yield equal_cost(gap, w[tight], w[near])
    return (PLUS, near) if covered else (MINUS, tight)


def solve_parametric(t: TreeNetwork, p: int, pre: Preprocessed | None = None,
                     debug: bool = False) -> Solution:
    """Optimal cost by simulating the bottom-up greedy at the unknown optimum."""
    if p < 1:
        raise ValueError("p must be at least 1")
    pre = pre or preprocess(t)
    tree = pre.tree
    zero = tree.weight[0] * 0
    if p >= t.positive_count():
        res = feasibility_test(pre, zero, p)
        return Solution(res.alpha, _placement(pre, res), 1, 0, "parametric")
    search = _Search(pre, p, debug)
    if not search.ge(zero):
        # zero is feasible
        res = feasibility_test(pre, zero, p)
        return Solution(zero, _placement(pre, res), search.calls, 0, "parametric")
    levels: dict[int, list[int]] = {}
    for v in tree.preorder:
        levels.setdefault(tree.level[v], []).append(v)
    status: dict = {}
    for lvl in sorted(levels, reverse=True):
        running = {}
        pending = {}
        for v in levels[lvl]:
            gen = _merge_at(tree, status, v)
            try:
                pending[v] = next(gen)
                running[v] = gen
            except StopIteration as stop:
                status[v] = stop.value
        while pending:
            search.settle(pending.values())
            nxt = {}
            for v, c in pending.items():
                try:
                    nxt[v] = running[v].send(search.ge(c))
                except StopIteration as stop:
                    status[v] = stop.value
            pending = nxt
    alpha = search.bounds.high
    res = feasibility_test(pre, alpha, p)
    if not res.feasible:
        raise AssertionError("final upper bound is infeasible")
    return Solution(alpha, _placement(pre, res), search.calls + 1, len(search.memo), "parametric")
