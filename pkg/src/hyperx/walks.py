"""Berge walk counts.

``w_1(v) = (k-1)*d_v`` and ``w_{h+1}(v)`` sums ``w_h`` over the other
vertices of every edge through ``v``. Counts are exact int64; a step whose
result would not fit raises :class:`~hyperx.errors.Overflow` instead of
wrapping.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _kernels
from .errors import BadParams, Overflow
from .hypercore import Hypergraph, classify_edges, require_connected, require_linear

INT64_MAX = np.iinfo(np.int64).max


@dataclass(frozen=True)
class WalkTable:
    h_max: int
    table: np.ndarray  # shape (n, h_max); column h-1 holds w_h

    def w(self, h: int, v: int | None = None):
        col = self.table[:, h - 1]
        return col if v is None else int(col[v])

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["vertex"] + [f"w{h}" for h in range(1, self.h_max + 1)])
        for v, row in enumerate(self.table):
            out.writerow([v] + [int(x) for x in row])
        return buf.getvalue()


def walk_counts(H: Hypergraph, h_max: int) -> WalkTable:
    if h_max < 1:
        raise BadParams("h_max must be >= 1")
    deg = np.asarray(H.degrees, dtype=np.int64)
    table, h = _kernels.walk_recursion(H.n, H.k, H.edge_array, deg, int(h_max))
    # columns from h on need Python integers: k * max_degree * max(w) may not fit
    for h in range(h, h_max):
        exact = _exact_step(H, [int(x) for x in table[:, h - 1]])
        if max(exact, default=0) > INT64_MAX:
            raise Overflow(h + 1)
        table[:, h] = exact
    return WalkTable(h_max, table)


def _exact_step(H: Hypergraph, prev: list[int]) -> list[int]:
    nxt = [0] * H.n
    for e in H.edges:
        total = sum(prev[w] for w in e)
        for v in e:
            nxt[v] += total - prev[v]
    return nxt


def check_second_walk_identity(H: Hypergraph, v: int) -> tuple[int, int, bool]:
    """``(w_2(v), (k-1) * sum_t t*e_t(N_v), equal)`` for a connected linear k-graph, k >= 3."""
    require_linear(H)
    require_connected(H)
    if H.k < 3:
        raise BadParams("identity is stated for k >= 3")
    lhs = walk_counts(H, 2).w(2, v)
    counts = classify_edges(H, H.neighbors(v)).counts
    rhs = (H.k - 1) * sum(t * c for t, c in enumerate(counts))
    return lhs, rhs, lhs == rhs


def iter_berge_walks(H: Hypergraph, v: int, h: int) -> Iterator[tuple[int, ...]]:
    """Yield every walk ``(v1, e1, v2, ..., e_h, v_{h+1})`` of length ``h`` from ``v``."""

    def extend(seq: tuple[int, ...], left: int) -> Iterator[tuple[int, ...]]:
        if left == 0:
            yield seq
            return
        cur = seq[-1]
        for i, e in enumerate(H.edges):
            if cur in e:
                for w in e:
                    if w != cur:
                        yield from extend(seq + (i, w), left - 1)

    yield from extend((v,), h)


def count_walks_exhaustive(H: Hypergraph, h_max: int) -> np.ndarray:
    """Walk counts by explicit enumeration (independent of the recursion); shape ``(n, h_max)``."""
    if h_max < 1:
        raise BadParams("h_max must be >= 1")
    return _kernels.count_walks_exhaustive(H.n, H.m, H.k, H.edge_array, int(h_max))
