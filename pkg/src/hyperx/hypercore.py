"""Validated k-uniform hypergraphs and the neighbourhood bookkeeping built on them.

Vertices are dense 0-based integers ``0..n-1``. Every edge is stored as a
sorted tuple of ``k`` distinct vertices. Edge order is the insertion order;
:meth:`Hypergraph.canonical` gives the lexicographically sorted variant.
Instances are immutable, and every derived table is cached on first use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import accumulate, combinations
from typing import Iterable

import numpy as np

from ._cache import memoized
from .errors import (
    DuplicateEdge,
    NonUniformEdge,
    NotAdjacent,
    NotConnected,
    NotLinear,
    VertexOutOfRange,
)

__all__ = [
    "Hypergraph",
    "VertexStats",
    "EdgeClassification",
    "OuterSets",
    "build",
    "is_linear",
    "is_connected",
    "unique_edge",
    "neighborhood",
    "classify_edges",
    "classify_edges_at",
    "common_neighborhood",
    "outer_sets",
]


@dataclass(frozen=True)
class Hypergraph:
    k: int
    n: int
    edges: tuple[tuple[int, ...], ...]
    m: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.k < 2:
            raise NonUniformEdge(f"edge size k must be >= 2, got {self.k}")
        if self.n < 0:
            raise VertexOutOfRange(f"vertex count must be >= 0, got {self.n}")
        canon = []
        seen = set()
        for i, raw in enumerate(self.edges):
            e = tuple(sorted(int(v) for v in raw))
            if len(e) != self.k or len(set(e)) != self.k:
                raise NonUniformEdge(
                    f"edge {i} {tuple(raw)} does not have {self.k} distinct vertices"
                )
            if e[0] < 0 or e[-1] >= self.n:
                raise VertexOutOfRange(f"edge {i} {e} leaves the range [0, {self.n})")
            if e in seen:
                raise DuplicateEdge(f"edge {i} {e} appears more than once")
            seen.add(e)
            canon.append(e)
        object.__setattr__(self, "edges", tuple(canon))
        object.__setattr__(self, "m", len(canon))

    def canonical(self) -> "Hypergraph":
        return Hypergraph(self.k, self.n, tuple(sorted(self.edges)))

    def with_edge(self, edge: Iterable[int]) -> "Hypergraph":
        return Hypergraph(self.k, self.n, self.edges + (tuple(edge),))

    @memoized
    def stats(self) -> "VertexStats":
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return VertexStats(
            degrees=tuple(len(x) for x in inc),
            incidence=tuple(tuple(x) for x in inc),
        )

    @property
    def degrees(self) -> tuple[int, ...]:
        return self.stats.degrees

    @property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        return self.stats.incidence

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @memoized
    def edge_array(self) -> np.ndarray:
        return np.array(self.edges, dtype=np.int64).reshape(self.m, self.k)

    @memoized
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(ptr, idx, degree)``: edges at ``v`` are ``idx[ptr[v]:ptr[v+1]]``, ascending."""
        deg = np.array(self.degrees, dtype=np.int64)
        ptr = np.array((0,) + tuple(accumulate(self.degrees)), dtype=np.int64)
        idx = np.array([i for inc in self.incidence for i in inc], dtype=np.int64)
        return ptr, idx, deg

    @memoized
    def incidence_matrix(self) -> np.ndarray:
        """``n x m`` 0/1 int64 matrix with ``B[v, i] = 1`` iff ``v`` lies on edge ``i``."""
        B = np.zeros((self.n, self.m), dtype=np.int64)
        if self.m:
            B[self.edge_array.ravel(), np.repeat(np.arange(self.m), self.k)] = 1
        return B

    @memoized
    def edge_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(e) for e in self.edges)

    @memoized
    def _pair_edges(self) -> dict[tuple[int, int], list[int]]:
        pairs: dict[tuple[int, int], list[int]] = {}
        for i, e in enumerate(self.edges):
            for p in combinations(e, 2):
                pairs.setdefault(p, []).append(i)
        return pairs

    @memoized
    def linear(self) -> bool:
        return all(len(v) == 1 for v in self._pair_edges.values())

    @memoized
    def connected(self) -> bool:
        if self.n == 0:
            return False
        if self.m == 0:
            return self.n == 1
        parent = list(range(self.n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in self.edges:
            r = find(e[0])
            for w in e[1:]:
                parent[find(w)] = r
        root = find(0)
        return all(find(v) == root for v in range(self.n))

    def neighbors(self, v: int) -> frozenset[int]:
        return self._neighborhoods[v]

    @memoized
    def _neighborhoods(self) -> tuple[frozenset[int], ...]:
        out = []
        for v in range(self.n):
            nb: set[int] = set()
            for i in self.incidence[v]:
                nb.update(self.edges[i])
            nb.discard(v)
            out.append(frozenset(nb))
        return tuple(out)

    def to_dict(self) -> dict:
        return {"k": self.k, "n": self.n, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class VertexStats:
    degrees: tuple[int, ...]
    incidence: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class EdgeClassification:
    """Edges grouped by how many vertices they share with ``X``.

    ``counts[t]`` is the number of edges meeting ``X`` in exactly ``t``
    vertices (``t = 0..k``); ``labels[i]`` is that ``t`` for edge ``i``.
    """

    X: frozenset[int]
    counts: tuple[int, ...]
    labels: tuple[int, ...]

    def e(self, t: int) -> int:
        return self.counts[t]


@dataclass(frozen=True)
class OuterSets:
    """Vertices beyond the closed neighbourhood of ``u``, split by entry point.

    ``outer`` holds the vertices outside ``N_u`` and ``u``. ``reach[v]``, for
    ``v`` in ``N_u``, holds the outer vertices lying on edges through ``v``
    that touch ``N_u`` only at ``v``. ``per_edge[i]`` is the union of
    ``reach`` over the non-``u`` vertices of the i-th edge at ``u``, with
    edges taken in incidence order.
    """

    u: int
    outer: frozenset[int]
    reach: dict[int, frozenset[int]]
    per_edge: tuple[frozenset[int], ...]
    edges_at_u: tuple[int, ...]


def build(k: int, n: int, edge_list: Iterable[Iterable[int]]) -> Hypergraph:
    """Validate a raw edge list into a :class:`Hypergraph`.

    >>> build(3, 5, [{0, 1, 2}, {2, 3, 4}]).degrees
    (1, 1, 2, 1, 1)
    """
    return Hypergraph(int(k), int(n), tuple(tuple(e) for e in edge_list))


def is_linear(H: Hypergraph) -> bool:
    return H.linear


def is_connected(H: Hypergraph) -> bool:
    """True iff the incidence structure forms a single component covering all vertices.

    A lone vertex with no edges counts as connected; two or more vertices
    without edges do not.
    """
    return H.connected


def require_linear(H: Hypergraph) -> None:
    if not H.linear:
        raise NotLinear("operation requires a linear hypergraph")


def require_connected(H: Hypergraph) -> None:
    if not H.connected:
        raise NotConnected("operation requires a connected hypergraph")


def unique_edge(H: Hypergraph, x: int, y: int) -> int | None:
    """Index of the edge through both ``x`` and ``y``, or None when they are not adjacent."""
    if x == y:
        raise ValueError("unique_edge needs two distinct vertices")
    key = (x, y) if x < y else (y, x)
    found = H._pair_edges.get(key)
    if not found:
        return None
    if len(found) > 1:
        raise NotLinear(f"vertices {x} and {y} share {len(found)} edges")
    return found[0]


def neighborhood(H: Hypergraph, v: int) -> frozenset[int]:
    return H.neighbors(v)


def classify_edges(H: Hypergraph, X: Iterable[int]) -> EdgeClassification:
    Xs = frozenset(X)
    counts = [0] * (H.k + 1)
    labels = []
    for e in H.edges:
        t = sum(1 for w in e if w in Xs)
        counts[t] += 1
        labels.append(t)
    return EdgeClassification(Xs, tuple(counts), tuple(labels))


def classify_edges_at(H: Hypergraph, X: Iterable[int], v: int) -> tuple[int, ...]:
    """Counts ``e_t^v(X)`` for ``t = 0..k``, restricted to edges containing ``v``.

    Index 0 is included for symmetry with :func:`classify_edges`; it is
    always zero when ``v`` itself is in ``X``.
    """
    Xs = frozenset(X)
    counts = [0] * (H.k + 1)
    for i in H.incidence[v]:
        counts[sum(1 for w in H.edges[i] if w in Xs)] += 1
    return tuple(counts)


def common_neighborhood(
    H: Hypergraph, x: int, y: int
) -> tuple[frozenset[int], frozenset[int] | None]:
    """Return ``(N_xy, N'_xy)``.

    ``N'_xy`` drops the vertices of the edge through ``x`` and ``y``; it is
    None when the two are not adjacent. Use :func:`common_neighborhood_outside`
    to get the strict variant that raises instead.
    """
    both = H.neighbors(x) & H.neighbors(y)
    ie = unique_edge(H, x, y)
    if ie is None:
        return both, None
    return both, both - H.edge_sets[ie]


def common_neighborhood_outside(H: Hypergraph, x: int, y: int) -> frozenset[int]:
    _, outside = common_neighborhood(H, x, y)
    if outside is None:
        raise NotAdjacent(f"vertices {x} and {y} share no edge")
    return outside


def outer_sets(H: Hypergraph, u: int) -> OuterSets:
    require_linear(H)
    require_connected(H)
    Nu = H.neighbors(u)
    outer = frozenset(range(H.n)) - Nu - {u}
    reach: dict[int, frozenset[int]] = {}
    for v in sorted(Nu):
        acc: set[int] = set()
        for i in H.incidence[v]:
            e = H.edges[i]
            if sum(1 for w in e if w in Nu) == 1:
                acc.update(w for w in e if w in outer)
        reach[v] = frozenset(acc)
    at_u = H.incidence[u]
    per_edge = []
    for i in at_u:
        acc = set()
        for w in H.edges[i]:
            if w != u:
                acc |= reach[w]
        per_edge.append(frozenset(acc))
    return OuterSets(u, outer, reach, tuple(per_edge), tuple(at_u))


def degree_sum_identity(H: Hypergraph, v: int) -> tuple[int, int]:
    """Both sides of ``sum_t t*e_t(N_v) == sum_{w in N_v} d_w`` (equal by double counting)."""
    Nv = H.neighbors(v)
    cls = classify_edges(H, Nv)
    lhs = sum(t * c for t, c in enumerate(cls.counts))
    rhs = sum(H.degrees[w] for w in Nv)
    return lhs, rhs
