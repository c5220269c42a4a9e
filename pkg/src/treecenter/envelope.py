"""Upper envelopes of vertex cost lines along root paths.

For a vertex ``v`` the envelope ``E_v(t)`` is the largest cost
``w(u) * (d(u, v) + t)`` over ``u`` in the subtree of ``v``, where ``t`` is
the distance travelled from ``v`` towards the root.  It is the upper hull of
one line per vertex, hence convex, piecewise linear and nondecreasing.

Envelopes are stored on ``t >= 0`` without a right end: past the root the
hull is simply continued, which is what the feasibility test needs when a
center hanging in another branch has to reach into this subtree.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from operator import itemgetter
from typing import NamedTuple, Sequence

from .tree import NO_VERTEX, PointOnTree, RootedBinaryTree

INF = math.inf

BREAKPOINT = "breakpoint"
VERTEX = "vertex"
EXTENSION = "extension"


class Line(NamedTuple):
    """Cost of ``vertex`` at distance ``t`` above the envelope's anchor."""

    slope: object
    intercept: object
    vertex: int

    def at(self, t):
        return self.slope * t + self.intercept


class BendingPoint(NamedTuple):
    position: object  # distance from the root; negative past the root
    value: object
    kind: str


def upper_hull(lines: Sequence[Line]) -> list[Line]:
    """Lines forming the upper envelope on ``t >= 0``, left to right.

    ``lines`` must be sorted by slope.  Identical lines keep the smaller
    vertex id.
    """
    hull: list[Line] = []
    for ln in lines:
        a3, b3 = ln[0], ln[1]
        if hull and hull[-1][0] == a3:
            top = hull[-1]
            if b3 < top[1] or (b3 == top[1] and ln[2] >= top[2]):
                continue
            hull.pop()
        while len(hull) >= 2:
            a1, b1 = hull[-2][0], hull[-2][1]
            a2, b2 = hull[-1][0], hull[-1][1]
            # middle line only touches the hull if x(1,3) <= x(1,2)
            if (b1 - b3) * (a2 - a1) <= (b1 - b2) * (a3 - a1):
                hull.pop()
            else:
                break
        hull.append(ln)
    i = 0
    while i + 1 < len(hull) and hull[i][1] <= hull[i + 1][1]:
        i += 1
    return hull[i:] if i else hull


@dataclass
class Envelope:
    """Upper envelope anchored at ``owner``; ``lines[i]`` is maximal from ``starts[i]`` on."""

    owner: int
    starts: list
    lines: list
    values: list

    @classmethod
    def from_hull(cls, owner: int, hull: list[Line]) -> "Envelope":
        if not hull:
            return cls(owner, [], [], [])
        zero = hull[0][1] * 0
        starts = [zero]
        values = [hull[0][1]]
        for prev, ln in zip(hull, hull[1:]):
            t = (prev[1] - ln[1]) / (ln[0] - prev[0])
            starts.append(t)
            values.append(ln[0] * t + ln[1])
        return cls(owner, starts, list(hull), values)

    @classmethod
    def empty(cls, owner: int = NO_VERTEX) -> "Envelope":
        return cls(owner, [], [], [])

    def __bool__(self) -> bool:
        return bool(self.lines)

    @property
    def tail_slope(self):
        return self.lines[-1][0]

    def value(self, t):
        if not self.lines:
            return -INF
        i = bisect_right(self.starts, t) - 1
        if i < 0:
            i = 0
        ln = self.lines[i]
        return ln[0] * t + ln[1]

    def lines_above(self, d) -> list[Line]:
        """Lines still on the hull for ``t >= d``, re-anchored ``d`` higher up."""
        if not self.lines:
            return []
        i = max(bisect_right(self.starts, d) - 1, 0)
        return [Line(a, a * d + b, u) for a, b, u in self.lines[i:]]

    def reach(self, alpha, eps=0):
        """Largest ``t`` with ``E(t) <= alpha`` and the line that bounds it.

        Returns ``None`` when even ``E(0)`` exceeds ``alpha``; ``(INF, None)``
        when the envelope never exceeds it.
        """
        if not self.lines:
            return INF, None
        k = bisect_right(self.values, alpha + eps) - 1
        if k < 0:
            return None
        return _reach_on(self.lines[k], self.starts[k], alpha, k == len(self.lines) - 1)

    def points(self, marker_ts: Sequence = (), limit=None) -> list[BendingPoint]:
        """Hull breakpoints merged with vertex markers, walking up from the owner.

        ``limit`` is the owner's distance to the root; positions are reported
        as distances from the root.  Equal positions keep both points.
        """
        out = []
        bps = [(t, val, BREAKPOINT) for t, val in zip(self.starts, self.values)]
        marks = [(t, self.value(t), VERTEX) for t in marker_ts]
        merged = sorted(bps + marks, key=lambda p: (p[0], p[1], p[2] == BREAKPOINT))
        for t, val, kind in merged:
            if limit is None:
                out.append(BendingPoint(t, val, kind))
                continue
            if kind == BREAKPOINT and t > limit:
                kind = EXTENSION
            out.append(BendingPoint(limit - t, val, kind))
        return out


def _reach_on(ln: Line, start, alpha, last: bool):
    a, b = ln[0], ln[1]
    if a == 0:
        # a flat piece is always the last one
        return (INF, ln[2]) if last else (start, ln[2])
    t = (alpha - b) / a
    if t < start:
        t = start
    return t, ln[2]


def leaf_envelope(tree: RootedBinaryTree, v: int) -> Envelope:
    if not tree.is_leaf(v):
        raise ValueError(f"vertex {v} is not a leaf")
    w = tree.weight[v]
    return Envelope.from_hull(v, [Line(w, w * 0, v)])


def combine(tree: RootedBinaryTree, v: int, left: Envelope | None, right: Envelope | None) -> Envelope:
    """Envelope of ``v`` from its children's envelopes (either may be absent)."""
    w = tree.weight[v]
    lines = [Line(w, w * 0, v)]
    for env in (left, right):
        if env:
            lines.extend(env.lines_above(tree.length[env.owner]))
    lines.sort(key=itemgetter(0))
    return Envelope.from_hull(v, upper_hull(lines))


class EnvelopeSet:
    """Envelopes for every vertex plus the values at each parent vertex."""

    def __init__(self, tree: RootedBinaryTree, envelopes: list[Envelope]):
        self.tree = tree
        self.envelopes = envelopes
        self.at_self = [e.values[0] for e in envelopes]
        self.at_parent = [None if tree.parent[v] == NO_VERTEX else envelopes[v].value(tree.length[v])
                          for v in range(tree.n)]

    def __getitem__(self, v: int) -> Envelope:
        return self.envelopes[v]

    def reach(self, v: int, alpha, eps=0):
        return self.envelopes[v].reach(alpha, eps)

    def marker_ts(self, v: int) -> list:
        dv = self.tree.depth[v]
        return [dv - dv] + [dv - self.tree.depth[a] for a in self.tree.ancestors(v)]

    def points(self, v: int) -> list[BendingPoint]:
        return self.envelopes[v].points(self.marker_ts(v), limit=self.tree.depth[v])

    def catalog(self, v: int) -> tuple[list, list, list]:
        """(t, value, owner-of-following-piece) for every stored point of ``E_v``."""
        env = self.envelopes[v]
        marks = self.marker_ts(v)
        ts, vals, owners = [], [], []
        i = j = 0
        starts, lines = env.starts, env.lines
        k = len(starts)
        while i < k or j < len(marks):
            if j == len(marks) or (i < k and starts[i] <= marks[j]):
                t = starts[i]
                ln = lines[i]
                i += 1
            else:
                t = marks[j]
                j += 1
                ln = lines[i - 1] if i > 0 else lines[0]
            ts.append(t)
            vals.append(ln[0] * t + ln[1])
            owners.append(ln[2])
        return ts, vals, owners

    def total_points(self) -> int:
        return sum(len(e.lines) for e in self.envelopes) + sum(self.tree.level[v] + 1
                                                                for v in range(self.tree.n))

    def dump(self) -> str:
        rows = []
        for v in range(self.tree.n):
            pts = " ".join(f"({_show(p.position)},{_show(p.value)})" for p in self.points(v))
            rows.append(f"env {v}: {pts}")
        return "\n".join(rows) + "\n"

    def evaluate(self, v: int, x: PointOnTree):
        """``E_v`` at a point ``x`` on the path from ``v`` to the root."""
        return self.envelopes[v].value(self.tree.depth[v] - self.tree.point_depth(x))


def _show(x) -> str:
    return str(x)


def build_envelopes(tree: RootedBinaryTree) -> EnvelopeSet:
    """All envelopes, bottom-up (children before parents)."""
    envs: list[Envelope | None] = [None] * tree.n
    weight, left, right, length = tree.weight, tree.left, tree.right, tree.length
    for v in reversed(tree.preorder):
        w = weight[v]
        own = Line(w, w * 0, v)
        l, r = left[v], right[v]
        if l == NO_VERTEX and r == NO_VERTEX:
            envs[v] = Envelope(v, [w * 0], [own], [w * 0])
            continue
        lines = [own]
        for c in (l, r):
            if c != NO_VERTEX:
                lines.extend(envs[c].lines_above(length[c]))
        lines.sort(key=itemgetter(0))
        envs[v] = Envelope.from_hull(v, upper_hull(lines))
    return EnvelopeSet(tree, envs)


def envelope_crossing_on_edge(es: EnvelopeSet, v: int, alpha, eps=0) -> PointOnTree | None:
    """Point on ``[v, parent(v))`` where ``E_v`` reaches ``alpha``, if any."""
    tree = es.tree
    if v == tree.root:
        raise ValueError("the root has no parent edge")
    if es.at_self[v] > alpha + eps or es.at_parent[v] <= alpha + eps:
        return None
    t, _ = es.envelopes[v].reach(alpha, eps)
    return tree.point(v, t)
