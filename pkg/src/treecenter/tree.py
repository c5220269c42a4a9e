"""Weighted tree networks: parsing, validation, binarization and distances.

Instance documents are line oriented::

    n 3
    v 0 1
    v 1 1
    v 2 1
    e 0 1 4
    e 1 2 4

Weights and lengths are decimals or ``p/q`` rationals; ``#`` starts a
comment line.  Everything is kept as :class:`fractions.Fraction` unless a
tree is explicitly converted with :meth:`TreeNetwork.as_float`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

NO_VERTEX = -1


class TreeFormatError(ValueError):
    """Raised for malformed or invalid instance documents."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def parse_number(token: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad number {token!r}") from None


@dataclass(frozen=True)
class TreeNetwork:
    """Undirected weighted tree; vertices are ``0..n-1``."""

    n: int
    weights: tuple
    edges: tuple  # (u, v, length)
    labels: tuple = ()

    @classmethod
    def build(cls, weights: Sequence, edges: Iterable, labels: Sequence[str] | None = None,
              check: bool = True) -> "TreeNetwork":
        weights = tuple(_num(w) for w in weights)
        edges = tuple((int(u), int(v), _num(d)) for u, v, d in edges)
        if labels is None:
            labels = tuple(str(i) for i in range(len(weights)))
        t = cls(len(weights), weights, edges, tuple(labels))
        if check:
            problems = validate(t)
            if problems:
                raise TreeFormatError("; ".join(problems))
        return t

    def adjacency(self) -> list[list[tuple[int, object]]]:
        adj: list[list[tuple[int, object]]] = [[] for _ in range(self.n)]
        for u, v, d in self.edges:
            adj[u].append((v, d))
            adj[v].append((u, d))
        return adj

    def as_float(self) -> "TreeNetwork":
        return TreeNetwork(self.n, tuple(float(w) for w in self.weights),
                           tuple((u, v, float(d)) for u, v, d in self.edges), self.labels)

    def positive_count(self) -> int:
        return sum(1 for w in self.weights if w > 0)

    def to_text(self) -> str:
        lines = [f"n {self.n}"]
        lines += [f"v {self.labels[i]} {_fmt(w)}" for i, w in enumerate(self.weights)]
        lines += [f"e {self.labels[u]} {self.labels[v]} {_fmt(d)}" for u, v, d in self.edges]
        return "\n".join(lines) + "\n"


def _num(x):
    if isinstance(x, float):
        return x
    return Fraction(x)


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return repr(x)


def parse_tree(text: str) -> TreeNetwork:
    """Parse an instance document; ids are renumbered in first-appearance order."""
    ids: dict[str, int] = {}
    weights: dict[int, Fraction] = {}
    edges: list[tuple[int, int, Fraction]] = []
    declared_n = None

    def vid(token: str) -> int:
        if token not in ids:
            ids[token] = len(ids)
        return ids[token]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag = parts[0]
        try:
            if tag == "n" and len(parts) == 2:
                if declared_n is not None:
                    raise TreeFormatError("duplicate header", lineno)
                declared_n = int(parts[1])
                if declared_n < 1:
                    raise TreeFormatError("vertex count must be positive", lineno)
            elif declared_n is None:
                raise TreeFormatError("expected header 'n <count>'", lineno)
            elif tag == "v" and len(parts) == 3:
                i = vid(parts[1])
                if i in weights:
                    raise TreeFormatError(f"duplicate vertex {parts[1]}", lineno)
                w = parse_number(parts[2])
                if w < 0:
                    raise TreeFormatError(f"negative weight at vertex {parts[1]}", lineno)
                weights[i] = w
            elif tag == "e" and len(parts) == 4:
                d = parse_number(parts[3])
                if d < 0:
                    raise TreeFormatError(f"negative length on edge {parts[1]}-{parts[2]}", lineno)
                edges.append((vid(parts[1]), vid(parts[2]), d))
            else:
                raise TreeFormatError(f"unrecognised line {line!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, TreeFormatError):
                raise
            raise TreeFormatError(str(exc), lineno) from None

    if declared_n is None:
        raise TreeFormatError("missing header 'n <count>'")
    if len(ids) != declared_n or len(weights) != declared_n:
        missing = [tok for tok, i in ids.items() if i not in weights]
        if missing:
            raise TreeFormatError(f"edge references undeclared vertex {missing[0]}")
        raise TreeFormatError(f"header declares {declared_n} vertices, found {len(weights)}")
    labels = tuple(sorted(ids, key=ids.get))
    t = TreeNetwork(declared_n, tuple(weights[i] for i in range(declared_n)), tuple(edges), labels)
    problems = validate(t)
    if problems:
        raise TreeFormatError("; ".join(problems))
    return t


def validate(t: TreeNetwork) -> list[str]:
    """All invariant violations of ``t``; empty iff it is a valid tree."""
    report = []
    if len(t.weights) != t.n:
        report.append(f"weight count {len(t.weights)} != n={t.n}")
    for i, w in enumerate(t.weights):
        if w < 0:
            report.append(f"negative weight at vertex {i}")
    if len(t.edges) != t.n - 1:
        report.append(f"not a tree: {len(t.edges)} edges for n={t.n}")
    parent = list(range(t.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    seen = set()
    for u, v, d in t.edges:
        if not (0 <= u < t.n and 0 <= v < t.n):
            report.append(f"edge {u}-{v} references unknown vertex")
            continue
        if d < 0:
            report.append(f"negative length on edge {u}-{v}")
        key = (min(u, v), max(u, v))
        if u == v or key in seen:
            report.append(f"cycle/multi-edge at {u}-{v}")
            continue
        seen.add(key)
        a, b = find(u), find(v)
        if a == b:
            report.append(f"cycle/multi-edge closing at {u}-{v}")
        else:
            parent[a] = b
    roots = {find(i) for i in range(t.n)}
    if len(roots) > 1:
        report.append(f"disconnected: {len(roots)} components")
    return report


@dataclass(frozen=True)
class PointOnTree:
    """A point on the edge from ``vertex`` up to its parent, ``offset`` above ``vertex``."""

    vertex: int
    offset: object = Fraction(0)


@dataclass
class RootedBinaryTree:
    """Rooted tree with at most two children per vertex.

    Vertices ``0..n_original-1`` are the input vertices; fillers follow.
    ``rep[v]`` is the input vertex that ``v`` coincides with.
    """

    root: int
    weight: list
    parent: list[int]
    left: list[int]
    right: list[int]
    length: list
    depth: list
    level: list[int]
    rep: list[int]
    n_original: int
    preorder: list[int] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.parent)

    def is_original(self, v: int) -> bool:
        return v < self.n_original

    def children(self, v: int) -> list[int]:
        return [c for c in (self.left[v], self.right[v]) if c != NO_VERTEX]

    def is_leaf(self, v: int) -> bool:
        return self.left[v] == NO_VERTEX and self.right[v] == NO_VERTEX

    def height(self) -> int:
        return max(self.level)

    def ancestors(self, v: int) -> list[int]:
        """Proper ancestors of ``v``, nearest first."""
        out = []
        v = self.parent[v]
        while v != NO_VERTEX:
            out.append(v)
            v = self.parent[v]
        return out

    def lca(self, a: int, b: int) -> int:
        while self.level[a] > self.level[b]:
            a = self.parent[a]
        while self.level[b] > self.level[a]:
            b = self.parent[b]
        while a != b:
            a, b = self.parent[a], self.parent[b]
        return a

    def vertex_distance(self, a: int, b: int):
        return self.depth[a] + self.depth[b] - 2 * self.depth[self.lca(a, b)]

    def subtree(self, v: int) -> list[int]:
        out, stack = [], [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(self.children(u))
        return out

    def point(self, v: int, offset=0) -> PointOnTree:
        """Canonical point ``offset`` above ``v`` on its parent edge."""
        if offset < 0:
            raise ValueError("negative offset")
        if v == self.root:
            if offset != 0:
                raise ValueError("root has no parent edge")
            return PointOnTree(v, offset * 0)
        if offset > self.length[v]:
            raise ValueError("offset beyond edge length")
        if offset == self.length[v] and offset != 0:
            return PointOnTree(self.parent[v], offset * 0)
        return PointOnTree(v, offset)

    def point_above(self, v: int, t) -> PointOnTree:
        """Point at distance ``t`` above ``v`` on the path to the root."""
        while v != self.root and t >= self.length[v]:
            if t == 0:
                break
            t -= self.length[v]
            v = self.parent[v]
        if v == self.root and t > 0:
            raise ValueError("point lies beyond the root")
        return self.point(v, t)

    def point_depth(self, x: PointOnTree):
        return self.depth[x.vertex] - x.offset

    def distance(self, a: PointOnTree, b: PointOnTree):
        """Length of the path between two points."""
        if a.vertex == b.vertex:
            return abs(a.offset - b.offset)
        m = self.lca(a.vertex, b.vertex)
        da, db = self.point_depth(a), self.point_depth(b)
        if m == a.vertex:
            # b below a's lower end
            return db - self.depth[m] + a.offset
        if m == b.vertex:
            return da - self.depth[m] + b.offset
        return da + db - 2 * self.depth[m]

    def to_original(self, x: PointOnTree) -> tuple[int, int, object]:
        """Express ``x`` as (child, parent, offset) in input-vertex ids."""
        v, off = x.vertex, x.offset
        if not self.is_original(v) or v == self.root:
            # fillers sit on zero-length edges at their representative
            v, off = self.rep[v], off * 0
            if v == self.root:
                return v, v, off
            p = self.parent[v]
            return v, self.rep[p], off
        return v, self.rep[self.parent[v]], off


def binarize(t: TreeNetwork, root: int = 0) -> RootedBinaryTree:
    """Root ``t`` at ``root`` and split high-degree vertices with zero-weight fillers.

    A vertex with k > 2 children keeps its first child on the left and gets a
    right-leaning chain of k-2 fillers joined by zero-length edges.
    """
    if not 0 <= root < t.n:
        raise ValueError(f"root {root} out of range")
    zero = t.weights[0] * 0
    adj = t.adjacency()
    n = t.n
    weight = list(t.weights)
    parent = [NO_VERTEX] * n
    left = [NO_VERTEX] * n
    right = [NO_VERTEX] * n
    length = [zero] * n
    rep = list(range(n))

    def new_filler(host: int) -> int:
        weight.append(zero)
        parent.append(NO_VERTEX)
        left.append(NO_VERTEX)
        right.append(NO_VERTEX)
        length.append(zero)
        rep.append(rep[host])
        return len(weight) - 1

    def attach(p: int, c: int, d, side: list[int]):
        side[p] = c
        parent[c] = p
        length[c] = d

    visited = [False] * n
    visited[root] = True
    stack = [root]
    while stack:
        v = stack.pop()
        kids = [(u, d) for u, d in adj[v] if not visited[u]]
        for u, _ in kids:
            visited[u] = True
        stack.extend(u for u, _ in reversed(kids))
        host = v
        while len(kids) > 2:
            u, d = kids.pop(0)
            attach(host, u, d, left)
            f = new_filler(v)
            attach(host, f, zero, right)
            host = f
        if kids:
            attach(host, kids[0][0], kids[0][1], left)
        if len(kids) > 1:
            attach(host, kids[1][0], kids[1][1], right)
    total = len(weight)
    depth = [zero] * total
    level = [0] * total
    preorder = []
    stack = [root]
    while stack:
        v = stack.pop()
        preorder.append(v)
        for c in (right[v], left[v]):
            if c != NO_VERTEX:
                depth[c] = depth[v] + length[c]
                level[c] = level[v] + 1
                stack.append(c)
    return RootedBinaryTree(root, weight, parent, left, right, length, depth, level, rep, n,
                            preorder)


def path_tree(weights: Sequence, lengths: Sequence) -> TreeNetwork:
    """Path ``0 - 1 - ... - k`` with the given weights and edge lengths."""
    return TreeNetwork.build(weights, [(i, i + 1, d) for i, d in enumerate(lengths)])
