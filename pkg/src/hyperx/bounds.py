"""Upper bounds on rho_alpha for linear hypergraphs, and the counting claims behind them.

Two families of results are checked here:

* bounds that need no forbidden-subgraph hypothesis: the walk bound
  (``rho^2 x_v^(k-1) <= alpha w_1(v)^2/(k-1)^2 + (1-alpha) w_2(v)/(k-1)^2``)
  and its linear specialisation in terms of neighbour degrees;
* bounds for Berge-C_l-free linear 3-graphs (keys ``cycle-*``) and for
  Berge-{B_s, K_{2,t}}-free linear k-graphs (keys ``book-*``), together with
  the integer inequalities their proofs rest on.

Right-hand sides are exact :class:`~fractions.Fraction` values. Spectral
left-hand sides carry the bracket error of the eigen-solver, so they are
compared with an allowance of ``max(1e-8, 20*tol*rho)``. Claim quantities
are exact integers and are compared with no allowance at all.

A hypothesis-dependent check refuses to run unless the instance carries a
``free`` certificate for every forbidden pattern, or the caller passes
``assume_free=True``; the report then records the hypothesis as assumed.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .berge import PatternGraph, Verdict, graph_pk_free_check, make_pattern
from .errors import BadParams, NotCertifiedFree
from .hypercore import (
    Hypergraph,
    classify_edges,
    classify_edges_at,
    outer_sets,
    require_connected,
    require_linear,
)
from .spectral import SpectralResult, max_entry_vertex
from .walks import walk_counts

CSV_COLUMNS = (
    "instance", "theorem", "alpha", "params", "lhs", "rhs", "slack", "holds", "certificate",
)

WALK = "walk"
LINEAR = "linear"
CYCLE_THEOREMS = ("cycle-local", "cycle-maxdeg", "cycle-rho", "cycle-alpha")
CYCLE_CLAIMS = (
    "cycle-outer-edges",
    "cycle-incident-edges",
    "cycle-near-edges",
    "cycle-inner-edges",
    "cycle-aux-graph",
)
BOOK_THEOREMS = ("book-local", "book-maxdeg", "book-rho", "book-alpha")
BOOK_CLAIMS = (
    "book-common-nbhd",
    "book-near-incidence",
    "book-reach-size",
    "book-reach-overlap",
    "book-edge-union",
    "book-outer-sum",
    "book-degree-sum",
)
ALL_KEYS = (WALK, LINEAR) + CYCLE_THEOREMS + CYCLE_CLAIMS + BOOK_THEOREMS + BOOK_CLAIMS

# certificate column values
CERTIFIED = "certified"
ASSUMED = "assumed"
NOT_NEEDED = "none-needed"

Number = int | float | Fraction


def _fmt(x: Number | None) -> str:
    if x is None:
        return ""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else repr(float(x))
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


@dataclass(frozen=True)
class BoundReport:
    """One checked inequality (``relation`` is ``<=``) or identity (``==``).

    ``holds`` is None for a skipped check, in which case ``note`` says why.
    """

    instance: str
    theorem: str
    alpha: float | None
    params: Mapping[str, int]
    lhs: Number | None
    rhs: Number | None
    holds: bool | None
    certificate: str
    relation: str = "<="
    allowance: float = 0.0
    tol: float | None = None
    vertex: int | None = None
    note: str = ""

    @property
    def slack(self) -> Number | None:
        if self.lhs is None or self.rhs is None:
            return None
        if isinstance(self.lhs, float) or isinstance(self.rhs, float):
            return float(self.rhs) - float(self.lhs)
        return self.rhs - self.lhs

    @property
    def skipped(self) -> bool:
        return self.holds is None

    def params_text(self) -> str:
        return ";".join(f"{k}={v}" for k, v in self.params.items())

    def row(self) -> list[str]:
        holds = "skipped" if self.holds is None else _fmt(self.holds)
        return [
            self.instance,
            self.theorem,
            _fmt(self.alpha),
            self.params_text(),
            _fmt(self.lhs),
            _fmt(self.rhs),
            _fmt(self.slack),
            holds,
            self.certificate,
        ]

    def to_dict(self) -> dict:
        def plain(x):
            if isinstance(x, Fraction):
                return int(x) if x.denominator == 1 else float(x)
            return x

        return {
            "instance": self.instance,
            "theorem": self.theorem,
            "alpha": self.alpha,
            "params": dict(self.params),
            "lhs": plain(self.lhs),
            "rhs": plain(self.rhs),
            "slack": plain(self.slack),
            "holds": self.holds,
            "certificate": self.certificate,
            "relation": self.relation,
            "allowance": self.allowance,
            "tol": self.tol,
            "vertex": self.vertex,
            "note": self.note,
        }


def reports_to_csv(reports: Iterable[BoundReport]) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(CSV_COLUMNS)
    for r in reports:
        out.writerow(r.row())
    return buf.getvalue()


def reports_to_jsonl(reports: Iterable[BoundReport]) -> str:
    return "".join(json.dumps(r.to_dict(), sort_keys=True) + "\n" for r in reports)


def allowance(result: SpectralResult) -> float:
    return max(1e-8, 20.0 * result.tol * result.rho)


def _frac(alpha: float) -> Fraction:
    return Fraction(alpha)


def _spectral_report(
    instance, key, result: SpectralResult, params, lhs: float, rhs: Fraction, cert, vertex=None
) -> BoundReport:
    slack_allowed = allowance(result)
    return BoundReport(
        instance=instance,
        theorem=key,
        alpha=result.alpha,
        params=params,
        lhs=lhs,
        rhs=rhs,
        holds=lhs <= float(rhs) + slack_allowed,
        certificate=cert,
        allowance=slack_allowed,
        tol=result.tol,
        vertex=vertex,
    )


def _claim_report(instance, key, params, lhs, rhs, cert, relation="<=", vertex=None, note=""):
    holds = lhs == rhs if relation == "==" else lhs <= rhs
    return BoundReport(
        instance=instance,
        theorem=key,
        alpha=None,
        params=params,
        lhs=lhs,
        rhs=rhs,
        holds=holds,
        certificate=cert,
        relation=relation,
        vertex=vertex,
        note=note,
    )


# ---------------------------------------------------------------------------
# hypothesis bookkeeping


def required_patterns_cycle(l: int) -> tuple[PatternGraph, ...]:
    return (make_pattern("cycle", l),)


def required_patterns_book(s: int, t: int) -> tuple[PatternGraph, ...]:
    return (make_pattern("book", s), make_pattern("kst", 2, t))


def hypothesis_status(
    certificates: Mapping[str, str] | None,
    patterns: Sequence[PatternGraph],
    assume_free: bool = False,
) -> str:
    """``certified`` when every pattern is certified free, ``assumed`` under the override.

    ``certificates`` maps pattern DSL strings to verdicts. A pattern that is
    missing or ``unknown`` can be assumed away; a ``contains`` verdict cannot,
    because the hypothesis is then known to be false.
    """
    certificates = certificates or {}
    missing = []
    for G in patterns:
        verdict = str(certificates.get(G.dsl, ""))
        if verdict == Verdict.FREE.value:
            continue
        if verdict == Verdict.CONTAINS.value:
            raise NotCertifiedFree(f"instance contains Berge-{G.dsl}")
        missing.append(f"{G.dsl}={verdict or 'missing'}")
    if not missing:
        return CERTIFIED
    if assume_free:
        return ASSUMED
    raise NotCertifiedFree("no freeness certificate for " + ", ".join(missing))


# ---------------------------------------------------------------------------
# bounds without a forbidden-subgraph hypothesis


def walk_rhs(H: Hypergraph, alpha: float, v: int, table=None) -> Fraction:
    """``alpha/(k-1)^2 * w_1(v)^2 + (1-alpha)/(k-1)^2 * w_2(v)``."""
    require_connected(H)
    if table is None:
        table = walk_counts(H, 2)
    a = _frac(alpha)
    q = (H.k - 1) ** 2
    w1, w2 = table.w(1, v), table.w(2, v)
    return a * Fraction(w1 * w1, q) + (1 - a) * Fraction(w2, q)


def check_walk_bound(
    H: Hypergraph, result: SpectralResult, instance: str = "", v: int | None = None
) -> BoundReport:
    """Walk bound at ``v`` (default: the max-entry vertex, where ``x_v = 1``)."""
    if v is None:
        v = max_entry_vertex(result)
    lhs = result.rho**2 * float(result.perron[v]) ** (H.k - 1)
    rhs = walk_rhs(H, result.alpha, v)
    return _spectral_report(instance, WALK, result, {}, lhs, rhs, NOT_NEEDED, vertex=v)


def check_walk_bound_all(H: Hypergraph, result: SpectralResult, instance: str = "") -> list[BoundReport]:
    table = walk_counts(H, 2)
    rho2 = result.rho**2
    out = []
    for v in range(H.n):
        lhs = rho2 * float(result.perron[v]) ** (H.k - 1)
        rhs = walk_rhs(H, result.alpha, v, table)
        out.append(_spectral_report(instance, WALK, result, {}, lhs, rhs, NOT_NEEDED, vertex=v))
    return out


def degree_sum_around(H: Hypergraph, u: int) -> tuple[int, int]:
    """``(sum_t t*e_t(N_u), sum_{v in N_u} d_v)``; both count incidences between N_u and edges."""
    Nu = H.neighbors(u)
    counts = classify_edges(H, Nu).counts
    return sum(t * c for t, c in enumerate(counts)), sum(H.degrees[v] for v in Nu)


def linear_rhs(H: Hypergraph, alpha: float, u: int) -> Fraction:
    """``alpha*d_u^2 + (1-alpha)/(k-1) * sum_{v in N_u} d_v`` for linear ``H``."""
    require_linear(H)
    require_connected(H)
    weighted, degsum = degree_sum_around(H, u)
    if weighted != degsum:
        raise AssertionError(f"degree-sum identity broken at {u}: {weighted} != {degsum}")
    a = _frac(alpha)
    d = H.degrees[u]
    return a * d * d + (1 - a) * Fraction(degsum, H.k - 1)


def check_linear_bound(H: Hypergraph, result: SpectralResult, instance: str = "") -> BoundReport:
    u = max_entry_vertex(result)
    rhs = linear_rhs(H, result.alpha, u)
    return _spectral_report(instance, LINEAR, result, {}, result.rho**2, rhs, NOT_NEEDED, vertex=u)


# ---------------------------------------------------------------------------
# right-hand sides for Berge-C_l-free linear 3-graphs


def _check_cycle_params(l: int) -> None:
    if l < 5:
        raise BadParams(f"cycle length must be >= 5, got {l}")


def cycle_local_rhs(n: int, l: int, alpha: float, d: int) -> Fraction:
    """``alpha d^2 + (1-alpha)[(2l-7)(n-1)/4 + (2l-3) d]``; ``d`` is d_u or the max degree."""
    a = _frac(alpha)
    return a * d * d + (1 - a) * (Fraction((2 * l - 7) * (n - 1), 4) + (2 * l - 3) * d)


def cycle_rho_sq_rhs(n: int, l: int) -> Fraction:
    return Fraction((6 * l - 13) * (n - 1), 4)


def cycle_rho_bound(n: int, l: int) -> float:
    """Upper bound on the plain spectral radius itself (square root taken)."""
    return math.sqrt(cycle_rho_sq_rhs(n, l))


def cycle_alpha_rhs(n: int, l: int, alpha: float) -> Fraction:
    a = _frac(alpha)
    return a * Fraction((n - 1) ** 2, 4) + (1 - a) * cycle_rho_sq_rhs(n, l)


# ---------------------------------------------------------------------------
# right-hand sides for Berge-{B_s, K_{2,t}}-free linear k-graphs


def book_constant(k: int) -> int:
    return 6 * k * k - 15 * k + 10


def book_t_max(k: int, s: int) -> Fraction:
    """Largest admissible ``t``: ``(6k^2-15k+10)(s-1)/2 + 1``."""
    return Fraction(book_constant(k) * (s - 1), 2) + 1


def _check_book_params(k: int, s: int, t: int) -> None:
    if k < 3 or s < 2 or t < 1:
        raise BadParams(f"need k >= 3, s >= 2, t >= 1; got k={k}, s={s}, t={t}")


def _check_t_range(k: int, s: int, t: int) -> None:
    if t > book_t_max(k, s):
        raise BadParams(f"t={t} exceeds the admissible maximum {book_t_max(k, s)} for k={k}, s={s}")


def book_local_rhs(n: int, k: int, s: int, t: int, alpha: float, d: int) -> Fraction:
    """``alpha d^2 + (1-alpha)[(t-1)(n-1)/(k-1)^2 + (C(s-1) - 2(t-1))/(2(k-1)) d]``."""
    a = _frac(alpha)
    C = book_constant(k)
    inner = Fraction((t - 1) * (n - 1), (k - 1) ** 2) + Fraction(
        C * (s - 1) - 2 * (t - 1), 2 * (k - 1)
    ) * d
    return a * d * d + (1 - a) * inner


def book_rho_sq_rhs(n: int, k: int, s: int) -> Fraction:
    return Fraction(book_constant(k) * (s - 1) * (n - 1), 2 * (k - 1) ** 2)


def book_rho_bound(n: int, k: int, s: int) -> float:
    return math.sqrt(book_rho_sq_rhs(n, k, s))


def book_alpha_rhs(n: int, k: int, s: int, alpha: float) -> Fraction:
    a = _frac(alpha)
    return a * Fraction((n - 1) ** 2, (k - 1) ** 2) + (1 - a) * book_rho_sq_rhs(n, k, s)


# ---------------------------------------------------------------------------
# claim quantities


@dataclass(frozen=True)
class ClaimQuantities:
    """Integer quantities around a vertex ``u`` used by the counting claims.

    ``counts[t]`` is ``e_t(N_u)``. Cycle-specific entries (``near_edges``,
    ``incident_two``, ``aux_*``) are None for book measurements and the
    book-specific entries are None for cycle measurements.
    """

    u: int
    n: int
    k: int
    d_u: int
    counts: tuple[int, ...]
    outer_size: int
    degree_sum: int
    # cycle case
    incident_two: int | None = None
    near_edges: int | None = None
    aux_edges: tuple[tuple[int, int], ...] | None = None
    # book case
    common_nbhd: Mapping[tuple[int, int], int] | None = None
    near_incidence: Mapping[tuple[int, int], int] | None = None
    reach_sizes: Mapping[int, int] | None = None
    reach_single: Mapping[int, int] | None = None
    union_sizes: tuple[int, ...] | None = None
    union_sums: tuple[int, ...] | None = None
    max_overlap: int | None = None
    extra: Mapping[str, int] = field(default_factory=dict)

    def e(self, t: int) -> int:
        return self.counts[t]


def measure_cycle_quantities(H: Hypergraph, u: int) -> ClaimQuantities:
    """Incidence-list accumulation of every quantity the cycle claims use."""
    if H.k != 3:
        raise BadParams("cycle claims are stated for 3-graphs")
    require_linear(H)
    require_connected(H)
    Nu = H.neighbors(u)
    cls = classify_edges(H, Nu)
    at_u = classify_edges_at(H, Nu, u)
    near = 0
    aux: list[tuple[int, int]] = []
    on_u = set(H.incidence[u])
    for i, (e, t) in enumerate(zip(H.edges, cls.labels)):
        if i in on_u or t < 2:
            continue
        near += 1
        inside = [w for w in e if w in Nu]
        aux.append((inside[0], inside[1]))
    return ClaimQuantities(
        u=u,
        n=H.n,
        k=H.k,
        d_u=H.degrees[u],
        counts=cls.counts,
        outer_size=H.n - len(Nu) - 1,
        degree_sum=sum(H.degrees[v] for v in Nu),
        incident_two=at_u[2],
        near_edges=near,
        aux_edges=tuple(aux),
    )


def recount_cycle_quantities(H: Hypergraph, u: int) -> ClaimQuantities:
    """Same quantities straight from the definitions, sharing no cached tables."""
    edges = [frozenset(e) for e in H.edges]
    Nu = set()
    for e in edges:
        if u in e:
            Nu |= e
    Nu.discard(u)
    counts = [0] * (H.k + 1)
    incident_two = 0
    near = 0
    aux = []
    for e in edges:
        t = len(e & Nu)
        counts[t] += 1
        if u in e and t == 2:
            incident_two += 1
        if u not in e and t in (2, 3):
            near += 1
            a, b = sorted(e & Nu)[:2]
            aux.append((a, b))
    outer = {w for w in range(H.n) if w != u and w not in Nu}
    d_u = sum(1 for e in edges if u in e)
    degsum = sum(sum(1 for e in edges if v in e) for v in Nu)
    return ClaimQuantities(
        u=u,
        n=H.n,
        k=H.k,
        d_u=d_u,
        counts=tuple(counts),
        outer_size=len(outer),
        degree_sum=degsum,
        incident_two=incident_two,
        near_edges=near,
        aux_edges=tuple(aux),
    )


def cycle_claim_reports(
    q: ClaimQuantities, l: int, instance: str = "", certificate: str = CERTIFIED, aux_check: bool = True
) -> list[BoundReport]:
    _check_cycle_params(l)
    params = {"l": l, "u": q.u}
    d = q.d_u
    outer_rhs = Fraction((2 * l - 7) * (q.n - 2 * d - 1), 2)
    note = "negative outer-set bound" if outer_rhs < 0 else ""
    out = [
        _claim_report(instance, "cycle-outer-edges", params, q.e(1), outer_rhs, certificate, note=note),
        _claim_report(instance, "cycle-incident-edges", params, q.incident_two, d, certificate, "=="),
        _claim_report(instance, "cycle-near-edges", params, q.near_edges, (2 * l - 5) * d, certificate),
        _claim_report(
            instance, "cycle-inner-edges", params, 2 * q.e(2) + 3 * q.e(3), (6 * l - 13) * d, certificate
        ),
    ]
    if aux_check:
        out.append(_aux_graph_report(q, l, instance, params, certificate))
    return out


def _aux_graph_report(q: ClaimQuantities, l: int, instance, params, certificate) -> BoundReport:
    """The auxiliary graph on ``N_u`` must avoid a path with ``2l-4`` edges."""
    touched = sorted({w for e in q.aux_edges for w in e})
    index = {w: i for i, w in enumerate(touched)}
    # neighbours of u not met by any auxiliary edge stay isolated
    size = 2 * q.d_u
    G = PatternGraph(size, tuple((index[a], index[b]) for a, b in q.aux_edges), "custom")
    pk_free, eg = graph_pk_free_check(G, 2 * l - 4)
    r = _claim_report(
        instance, "cycle-aux-graph", params, 2 * len(q.aux_edges), (2 * l - 5) * size, certificate
    )
    if not pk_free:
        return replace(r, holds=False, note="auxiliary graph has a long path")
    return r if eg else replace(r, holds=False)


def measure_cycle_claims(
    H: Hypergraph,
    u: int,
    l: int,
    certificates: Mapping[str, str] | None = None,
    assume_free: bool = False,
    instance: str = "",
) -> tuple[ClaimQuantities, list[BoundReport]]:
    _check_cycle_params(l)
    cert = hypothesis_status(certificates, required_patterns_cycle(l), assume_free)
    q = measure_cycle_quantities(H, u)
    return q, cycle_claim_reports(q, l, instance, cert)


def measure_book_quantities(H: Hypergraph, u: int) -> ClaimQuantities:
    """Incidence-list accumulation of every quantity the book claims use."""
    require_linear(H)
    require_connected(H)
    k = H.k
    nbrs = H._neighborhoods
    common: dict[tuple[int, int], int] = {}
    for (x, y) in H._pair_edges:
        common[(x, y)] = len(nbrs[x] & nbrs[y])
    near: dict[tuple[int, int], int] = {}
    for y in range(H.n):
        Ny = nbrs[y]
        for x in sorted(Ny):
            counts = classify_edges_at(H, Ny, x)
            near[(y, x)] = sum(counts[2:])
    Nu = nbrs[u]
    O = outer_sets(H, u)
    reach_sizes = {v: len(S) for v, S in O.reach.items()}
    reach_single = {v: classify_edges_at(H, Nu, v)[1] for v in sorted(Nu)}
    union_sizes = []
    union_sums = []
    max_overlap = 0
    for i, Vi in zip(O.edges_at_u, O.per_edge):
        others = [w for w in H.edges[i] if w != u]
        union_sizes.append(len(Vi))
        union_sums.append(sum(len(O.reach[w]) for w in others))
        for a in range(len(others)):
            for b in range(a + 1, len(others)):
                max_overlap = max(max_overlap, len(O.reach[others[a]] & O.reach[others[b]]))
    cls = classify_edges(H, Nu)
    return ClaimQuantities(
        u=u,
        n=H.n,
        k=k,
        d_u=H.degrees[u],
        counts=cls.counts,
        outer_size=len(O.outer),
        degree_sum=sum(H.degrees[v] for v in Nu),
        common_nbhd=common,
        near_incidence=near,
        reach_sizes=reach_sizes,
        reach_single=reach_single,
        union_sizes=tuple(union_sizes),
        union_sums=tuple(union_sums),
        max_overlap=max_overlap,
    )


def recount_book_quantities(H: Hypergraph, u: int) -> ClaimQuantities:
    """Same quantities from the definitions: pairwise membership scans over the edge list."""
    edges = [frozenset(e) for e in H.edges]
    n = H.n

    def nbhd(v):
        out = set()
        for e in edges:
            if v in e:
                out |= e
        out.discard(v)
        return out

    N = [nbhd(v) for v in range(n)]
    deg = [sum(1 for e in edges if v in e) for v in range(n)]
    common = {}
    for x in range(n):
        for y in range(x + 1, n):
            if y in N[x]:
                common[(x, y)] = sum(1 for z in range(n) if z in N[x] and z in N[y])
    near = {}
    for y in range(n):
        for x in sorted(N[y]):
            near[(y, x)] = sum(1 for e in edges if x in e and len(e & N[y]) >= 2)
    Nu = N[u]
    outer = {w for w in range(n) if w != u and w not in Nu}
    reach = {}
    single = {}
    for v in sorted(Nu):
        once = [e for e in edges if v in e and len(e & Nu) == 1]
        single[v] = len(once)
        reach[v] = {w for e in once for w in e if w in outer}
    union_sizes = []
    union_sums = []
    max_overlap = 0
    for e in H.edges:
        if u not in e:
            continue
        others = [w for w in e if w != u]
        union_sizes.append(len(set().union(*(reach[w] for w in others))))
        union_sums.append(sum(len(reach[w]) for w in others))
        for a, b in ((a, b) for i, a in enumerate(others) for b in others[i + 1:]):
            max_overlap = max(max_overlap, len(reach[a] & reach[b]))
    counts = [0] * (H.k + 1)
    for e in edges:
        counts[len(e & Nu)] += 1
    return ClaimQuantities(
        u=u,
        n=n,
        k=H.k,
        d_u=deg[u],
        counts=tuple(counts),
        outer_size=len(outer),
        degree_sum=sum(deg[v] for v in Nu),
        common_nbhd=common,
        near_incidence=near,
        reach_sizes={v: len(S) for v, S in reach.items()},
        reach_single=single,
        union_sizes=tuple(union_sizes),
        union_sums=tuple(union_sums),
        max_overlap=max_overlap,
    )


def book_claim_reports(
    q: ClaimQuantities, s: int, t: int, instance: str = "", certificate: str = CERTIFIED
) -> list[BoundReport]:
    k, n, d = q.k, q.n, q.d_u
    _check_book_params(k, s, t)
    params = {"k": k, "s": s, "t": t, "u": q.u}
    C = book_constant(k)
    worst_common = max(q.common_nbhd.values(), default=0)
    worst_near = max(q.near_incidence.values(), default=0)
    # reach-size identity: |S_v| = (k-1) e_1^v(N_u) for every neighbour v
    bad_reach = [v for v, size in q.reach_sizes.items() if size != (k - 1) * q.reach_single[v]]
    reach_lhs = sum(q.reach_sizes.values())
    reach_rhs = (k - 1) * sum(q.reach_single.values())
    losses = [sm - sz for sz, sm in zip(q.union_sizes, q.union_sums)]
    out = [
        _claim_report(
            instance, "book-common-nbhd", params, worst_common, (k - 1) * (2 * s - 1) - s, certificate
        ),
        _claim_report(
            instance, "book-near-incidence", params, worst_near, 2 * (k - 1) * (s - 1), certificate
        ),
        _claim_report(instance, "book-reach-size", params, reach_lhs, reach_rhs, certificate, "=="),
        _claim_report(
            instance, "book-reach-overlap", params, q.max_overlap, (2 * k - 3) * (s - 1), certificate
        ),
        _claim_report(
            instance,
            "book-edge-union",
            params,
            max(losses, default=0),
            comb(k - 1, 2) * (2 * k - 3) * (s - 1),
            certificate,
        ),
        _claim_report(
            instance,
            "book-outer-sum",
            params,
            sum(q.union_sizes),
            (t - 1) * (n - (k - 1) * d - 1),
            certificate,
        ),
        _claim_report(
            instance,
            "book-degree-sum",
            params,
            q.degree_sum,
            Fraction((t - 1) * (n - 1), k - 1) + (Fraction(C * (s - 1), 2) - (t - 1)) * d,
            certificate,
        ),
    ]
    if bad_reach:
        out[2] = replace(out[2], holds=False, note=f"mismatch at {bad_reach}")
    return out


def measure_book_claims(
    H: Hypergraph,
    u: int,
    s: int,
    t: int,
    certificates: Mapping[str, str] | None = None,
    assume_free: bool = False,
    instance: str = "",
) -> tuple[ClaimQuantities, list[BoundReport]]:
    _check_book_params(H.k, s, t)
    cert = hypothesis_status(certificates, required_patterns_book(s, t), assume_free)
    q = measure_book_quantities(H, u)
    return q, book_claim_reports(q, s, t, instance, cert)


# ---------------------------------------------------------------------------
# theorem suites


def check_cycle_theorems(
    H: Hypergraph,
    result: SpectralResult,
    l: int,
    certificates: Mapping[str, str] | None = None,
    assume_free: bool = False,
    instance: str = "",
    rho0: SpectralResult | None = None,
) -> list[BoundReport]:
    """Local, max-degree and closed-form bounds for a Berge-C_l-free linear 3-graph.

    The plain-radius row (``cycle-rho``) uses ``rho0`` if given, else
    ``result`` when it was computed at alpha = 0, and is omitted otherwise.
    """
    if H.k != 3:
        raise BadParams("cycle bounds are stated for 3-graphs")
    _check_cycle_params(l)
    require_linear(H)
    require_connected(H)
    cert = hypothesis_status(certificates, required_patterns_cycle(l), assume_free)
    n, a = H.n, result.alpha
    u = max_entry_vertex(result)
    params = {"l": l}
    rho2 = result.rho**2
    out = [
        _spectral_report(
            instance, "cycle-local", result, params, rho2,
            cycle_local_rhs(n, l, a, H.degrees[u]), cert, vertex=u,
        ),
        _spectral_report(
            instance, "cycle-maxdeg", result, params, rho2,
            cycle_local_rhs(n, l, a, H.max_degree), cert,
        ),
    ]
    plain = rho0 if rho0 is not None else (result if result.alpha == 0 else None)
    if plain is not None:
        out.append(
            _spectral_report(instance, "cycle-rho", plain, params, plain.rho**2, cycle_rho_sq_rhs(n, l), cert)
        )
    out.append(
        _spectral_report(instance, "cycle-alpha", result, params, rho2, cycle_alpha_rhs(n, l, a), cert)
    )
    return out


def check_book_theorems(
    H: Hypergraph,
    result: SpectralResult,
    s: int,
    t: int,
    certificates: Mapping[str, str] | None = None,
    assume_free: bool = False,
    instance: str = "",
    rho0: SpectralResult | None = None,
) -> list[BoundReport]:
    """Bounds for a Berge-{B_s, K_{2,t}}-free linear k-graph.

    The local bound is valid for every ``t >= 1``; the other three need
    ``t`` inside the admissible range, and out-of-range ``t`` raises
    :class:`~hyperx.errors.BadParams`.
    """
    k, n, a = H.k, H.n, result.alpha
    _check_book_params(k, s, t)
    _check_t_range(k, s, t)
    require_linear(H)
    require_connected(H)
    cert = hypothesis_status(certificates, required_patterns_book(s, t), assume_free)
    u = max_entry_vertex(result)
    params = {"k": k, "s": s, "t": t}
    rho2 = result.rho**2
    out = [
        _spectral_report(
            instance, "book-local", result, params, rho2,
            book_local_rhs(n, k, s, t, a, H.degrees[u]), cert, vertex=u,
        ),
        _spectral_report(
            instance, "book-maxdeg", result, params, rho2,
            book_local_rhs(n, k, s, t, a, H.max_degree), cert,
        ),
    ]
    plain = rho0 if rho0 is not None else (result if result.alpha == 0 else None)
    if plain is not None:
        out.append(
            _spectral_report(instance, "book-rho", plain, params, plain.rho**2, book_rho_sq_rhs(n, k, s), cert)
        )
    out.append(
        _spectral_report(instance, "book-alpha", result, params, rho2, book_alpha_rhs(n, k, s, a), cert)
    )
    return out


def check_book_local(
    H: Hypergraph,
    result: SpectralResult,
    s: int,
    t: int,
    certificates: Mapping[str, str] | None = None,
    assume_free: bool = False,
    instance: str = "",
) -> BoundReport:
    """The local bound alone, with no upper limit on ``t``."""
    _check_book_params(H.k, s, t)
    require_linear(H)
    require_connected(H)
    cert = hypothesis_status(certificates, required_patterns_book(s, t), assume_free)
    u = max_entry_vertex(result)
    rhs = book_local_rhs(H.n, H.k, s, t, result.alpha, H.degrees[u])
    return _spectral_report(
        instance, "book-local", result, {"k": H.k, "s": s, "t": t}, result.rho**2, rhs, cert, vertex=u
    )


# ---------------------------------------------------------------------------
# chain consistency


def cycle_chain(H: Hypergraph, u: int, l: int, alpha: float) -> tuple[Fraction, Fraction, Fraction]:
    """Exact right-hand sides (local at ``u``, max-degree, closed form)."""
    n = H.n
    return (
        cycle_local_rhs(n, l, alpha, H.degrees[u]),
        cycle_local_rhs(n, l, alpha, H.max_degree),
        cycle_alpha_rhs(n, l, alpha),
    )


def book_chain(
    H: Hypergraph, u: int, s: int, t: int, alpha: float
) -> tuple[Fraction, Fraction, Fraction]:
    n, k = H.n, H.k
    return (
        book_local_rhs(n, k, s, t, alpha, H.degrees[u]),
        book_local_rhs(n, k, s, t, alpha, H.max_degree),
        book_alpha_rhs(n, k, s, alpha),
    )


def chain_ordered(values: Sequence[Fraction]) -> bool:
    return all(a <= b for a, b in zip(values, values[1:]))
