"""Berge copies of small graphs inside uniform hypergraphs.

A hypergraph contains a Berge-G when the edges of G can be sent injectively
to distinct hyperedges, each containing the images of its two endpoints
under some injective vertex map. :func:`find_berge` answers that by a
budgeted backtracking search; :func:`brute_force_berge` answers it by plain
enumeration and exists to check the former.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from ._cache import memoized
from .errors import BadParams, TooLarge
from .hypercore import Hypergraph

DEFAULT_BUDGET = 5_000_000
BRUTE_MAX_PATTERN_VERTICES = 7
BRUTE_MAX_EDGES = 8
PATH_SEARCH_CAP = 40


class Verdict(str, enum.Enum):
    FREE = "free"
    CONTAINS = "contains"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class PatternGraph:
    """A simple graph on vertices ``0..p-1`` together with the family it came from."""

    p: int
    edges: tuple[tuple[int, int], ...]
    kind: str = "custom"
    params: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        canon = []
        for a, b in self.edges:
            a, b = int(a), int(b)
            if a == b:
                raise BadParams(f"loop at vertex {a}")
            if not (0 <= a < self.p and 0 <= b < self.p):
                raise BadParams(f"edge ({a}, {b}) outside 0..{self.p - 1}")
            canon.append((a, b) if a < b else (b, a))
        if len(set(canon)) != len(canon):
            raise BadParams("pattern has a repeated edge")
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @memoized
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.p
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return tuple(deg)

    @memoized
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.p)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return tuple(frozenset(s) for s in adj)

    @property
    def dsl(self) -> str:
        if self.kind == "kst":
            return f"kst:{self.params[0]},{self.params[1]}"
        if self.kind == "custom":
            return "custom"
        return f"{self.kind}:{self.params[0]}"

    @memoized
    def search_order(self) -> tuple[int, ...]:
        """Placement order: highest degree first, then the vertex most tied to those placed."""
        if self.p == 0:
            return ()
        deg = self.degrees
        placed: list[int] = []
        rest = set(range(self.p))
        while rest:
            best = min(
                rest,
                key=lambda a: (-sum(1 for b in self.adjacency[a] if b in placed), -deg[a], a),
            )
            placed.append(best)
            rest.discard(best)
        return tuple(placed)

    @memoized
    def _search_arrays(self):
        order = self.search_order
        pos = {a: i for i, a in enumerate(order)}
        anchor = []
        for i, a in enumerate(order):
            earlier = [b for b in self.adjacency[a] if pos[b] < i]
            anchor.append(min(earlier, key=lambda b: pos[b]) if earlier else -1)
        by_depth: list[list[int]] = [[] for _ in range(self.p)]
        for j, (a, b) in enumerate(self.edges):
            by_depth[max(pos[a], pos[b])].append(j)
        closed_ptr = [0]
        closed_idx: list[int] = []
        for lst in by_depth:
            closed_idx.extend(lst)
            closed_ptr.append(len(closed_idx))
        pe = np.array(self.edges, dtype=np.int64).reshape(-1, 2)
        return (
            np.array(order, dtype=np.int64),
            np.array(self.degrees, dtype=np.int64),
            np.array(anchor, dtype=np.int64),
            pe[:, 0].copy(),
            pe[:, 1].copy(),
            np.array(closed_ptr, dtype=np.int64),
            np.array(closed_idx, dtype=np.int64),
        )

    @memoized
    def _incidence_arrays(self):
        ptr = [0]
        idx: list[int] = []
        for a in range(self.p):
            idx.extend(j for j, e in enumerate(self.edges) if a in e)
            ptr.append(len(idx))
        return np.array(ptr, dtype=np.int64), np.array(idx, dtype=np.int64)


def make_pattern(kind: str, *params: int) -> PatternGraph:
    """Canonical labelled member of a named graph family.

    ``cycle(l)``, ``book(s)`` (s triangles on a common spine edge ``0-1``),
    ``kst(s, t)`` (parts ``0..s-1`` and ``s..s+t-1``), ``path(k)`` (k edges),
    ``complete(r)``.
    """
    kind = kind.lower().replace("-", "_")
    try:
        vals = [int(x) for x in params]
    except (TypeError, ValueError):
        raise BadParams(f"non-integer parameters {params!r}") from None

    def need(count: int) -> None:
        if len(vals) != count:
            raise BadParams(f"{kind} takes {count} parameter(s), got {len(vals)}")

    if kind == "cycle":
        need(1)
        (l,) = vals
        if l < 3:
            raise BadParams("cycle length must be >= 3")
        return PatternGraph(l, tuple((i, (i + 1) % l) for i in range(l)), "cycle", (l,))
    if kind == "book":
        need(1)
        (s,) = vals
        if s < 2:
            raise BadParams("book needs s >= 2 pages")
        edges = [(0, 1)]
        for i in range(s):
            edges += [(0, 2 + i), (1, 2 + i)]
        return PatternGraph(s + 2, tuple(edges), "book", (s,))
    if kind in ("kst", "complete_bipartite"):
        need(2)
        s, t = vals
        if s < 1 or t < 1:
            raise BadParams("complete bipartite parts must be nonempty")
        edges = tuple((i, s + j) for i in range(s) for j in range(t))
        return PatternGraph(s + t, edges, "kst", (s, t))
    if kind == "path":
        need(1)
        (k,) = vals
        if k < 1:
            raise BadParams("path length must be >= 1")
        return PatternGraph(k + 1, tuple((i, i + 1) for i in range(k)), "path", (k,))
    if kind == "complete":
        need(1)
        (r,) = vals
        if r < 2:
            raise BadParams("complete graph needs r >= 2")
        return PatternGraph(r, tuple(combinations(range(r), 2)), "complete", (r,))
    raise BadParams(f"unknown pattern kind {kind!r}")


_DSL = re.compile(r"^\s*([a-z_]+)\s*:\s*([0-9,\s]+)\s*$")


def parse_pattern(text: str) -> PatternGraph:
    """Parse ``cycle:5``, ``book:2``, ``kst:2,3``, ``path:4`` or ``complete:4``."""
    m = _DSL.match(text.lower())
    if not m:
        raise BadParams(f"cannot parse pattern {text!r}")
    nums = [x for x in m.group(2).replace(" ", "").split(",") if x]
    return make_pattern(m.group(1), *nums)


@dataclass(frozen=True)
class BergeWitness:
    core_map: dict[int, int]
    edge_map: dict[tuple[int, int], int]

    def to_dict(self) -> dict:
        return {
            "core_map": {str(a): v for a, v in sorted(self.core_map.items())},
            "edge_map": {f"{a},{b}": i for (a, b), i in sorted(self.edge_map.items())},
        }


@dataclass(frozen=True)
class BudgetExhausted:
    nodes: int


def validate_witness(H: Hypergraph, G: PatternGraph, w: BergeWitness) -> bool:
    """Independent check that ``w`` really embeds a Berge copy of ``G`` in ``H``."""
    core = w.core_map
    if len(core) != G.p or set(core) != set(range(G.p)):
        return False
    images = set(core.values())
    if len(images) != G.p or min(images, default=0) < 0 or max(images, default=0) >= H.n:
        return False
    emap = w.edge_map
    if len(emap) != G.num_edges or set(emap) != set(G.edges):
        return False
    targets = set(emap.values())
    if len(targets) != len(emap):
        return False
    sets = H.edge_sets
    for (a, b), i in emap.items():
        if not 0 <= i < H.m:
            return False
        e = sets[i]
        if core[a] not in e or core[b] not in e:
            return False
    return True


def _quick_absent(H: Hypergraph, G: PatternGraph) -> bool:
    return G.num_edges > H.m or G.p > H.n


def _edgeless_witness(H: Hypergraph, G: PatternGraph) -> BergeWitness:
    return BergeWitness({a: a for a in range(G.p)}, {})


def find_berge(
    H: Hypergraph, G: PatternGraph, budget: int = DEFAULT_BUDGET
) -> BergeWitness | BudgetExhausted | None:
    """Search for a Berge copy of ``G`` in ``H``.

    Returns a witness, ``None`` when the search completed without one, or
    :class:`BudgetExhausted` when more than ``budget`` search nodes were needed.
    """
    if _quick_absent(H, G):
        return None
    if G.num_edges == 0:
        return _edgeless_witness(H, G)
    inc_ptr, inc_idx, deg = H.csr
    order, pdeg, anchor, pe_a, pe_b, closed_ptr, closed_idx = G._search_arrays
    status, f, match, nodes = _kernels.berge_vertex_search(
        H.n, H.m, H.k, H.edge_array, inc_ptr, inc_idx, deg,
        G.p, order, pdeg, anchor, pe_a, pe_b, closed_ptr, closed_idx, int(budget),
    )
    if status == _kernels.BUDGET:
        return BudgetExhausted(int(nodes))
    if status == _kernels.ABSENT:
        return None
    return BergeWitness(
        {a: int(f[a]) for a in range(G.p)},
        {e: int(match[j]) for j, e in enumerate(G.edges)},
    )


def brute_force_berge(H: Hypergraph, G: PatternGraph) -> BergeWitness | None:
    """Reference answer by full enumeration; small inputs only."""
    if G.p > BRUTE_MAX_PATTERN_VERTICES or H.m > BRUTE_MAX_EDGES:
        raise TooLarge(
            f"brute force limited to {BRUTE_MAX_PATTERN_VERTICES} pattern vertices "
            f"and {BRUTE_MAX_EDGES} hyperedges"
        )
    if G.num_edges > H.m or G.p > H.n:
        return None
    if G.num_edges == 0:
        return _edgeless_witness(H, G)
    member = H.incidence_matrix.T
    pinc_ptr, pinc_idx = G._incidence_arrays
    pe_a, pe_b = G._search_arrays[3:5]
    status, f, phi = _kernels.berge_edge_brute(
        H.n, H.m, member, G.p, pe_a, pe_b, pinc_ptr, pinc_idx
    )
    if status != _kernels.FOUND:
        return None
    return BergeWitness(
        {a: int(f[a]) for a in range(G.p)},
        {e: int(phi[j]) for j, e in enumerate(G.edges)},
    )


def is_berge_free(H: Hypergraph, G: PatternGraph, budget: int = DEFAULT_BUDGET) -> Verdict:
    found = find_berge(H, G, budget)
    if found is None:
        return Verdict.FREE
    if isinstance(found, BudgetExhausted):
        return Verdict.UNKNOWN
    return Verdict.CONTAINS


def is_berge_family_free(
    H: Hypergraph, patterns: Iterable[PatternGraph], budget: int = DEFAULT_BUDGET
) -> Verdict:
    """Free only if free of every member; contains if any member is found."""
    unknown = False
    for G in patterns:
        v = is_berge_free(H, G, budget)
        if v is Verdict.CONTAINS:
            return Verdict.CONTAINS
        unknown |= v is Verdict.UNKNOWN
    return Verdict.UNKNOWN if unknown else Verdict.FREE


def combine_verdicts(verdicts: Iterable[Verdict]) -> Verdict:
    verdicts = list(verdicts)
    if Verdict.CONTAINS in verdicts:
        return Verdict.CONTAINS
    if Verdict.UNKNOWN in verdicts:
        return Verdict.UNKNOWN
    return Verdict.FREE


def longest_path_at_least(num_vertices: int, edges: Sequence[tuple[int, int]], length: int) -> bool:
    """True iff the simple graph has a path with ``length`` edges (exhaustive DFS)."""
    if length <= 0:
        return True
    adj: list[list[int]] = [[] for _ in range(num_vertices)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    on_path = [False] * num_vertices

    def dfs(v: int, depth: int) -> bool:
        if depth == length:
            return True
        on_path[v] = True
        for w in adj[v]:
            if not on_path[w] and dfs(w, depth + 1):
                on_path[v] = False
                return True
        on_path[v] = False
        return False

    return any(dfs(v, 0) for v in range(num_vertices) if adj[v])


def graph_pk_free_check(G: PatternGraph, k: int) -> tuple[bool, bool]:
    """``(is P_k-free, e(G) <= (k-1)n/2 when P_k-free)`` for a simple graph.

    ``P_k`` is the path with ``k`` edges. The edge-count verdict is True
    vacuously when the graph does contain ``P_k``.
    """
    if k < 1:
        raise BadParams("path length must be >= 1")
    if G.p > PATH_SEARCH_CAP:
        raise TooLarge(f"exhaustive path search limited to {PATH_SEARCH_CAP} vertices")
    pk_free = not longest_path_at_least(G.p, G.edges, k)
    bound = (not pk_free) or 2 * G.num_edges <= (k - 1) * G.p
    return pk_free, bound
