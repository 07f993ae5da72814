"""Instance generators: named families, seeded random linear k-graphs, exhaustive enumeration.

Everything here is deterministic. Random generation draws from
``numpy.random.default_rng(seed)`` and nothing else, so a seed pins the
output bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterator

import numpy as np

from . import hgio
from .errors import BadParams, Infeasible, TooLarge
from .hypercore import Hypergraph

ENUM_MAX_N = 9
ENUM_MAX_M = 5
MANIFEST = "manifest.json"


def single_edge(k: int) -> Hypergraph:
    if k < 2:
        raise BadParams("k must be >= 2")
    return Hypergraph(k, k, (tuple(range(k)),))


def loose_path(m: int, k: int) -> Hypergraph:
    """``m`` edges, consecutive ones sharing exactly one vertex; ``n = m(k-1)+1``."""
    if m < 1 or k < 2:
        raise BadParams("loose path needs m >= 1 and k >= 2")
    step = k - 1
    edges = tuple(tuple(range(i * step, i * step + k)) for i in range(m))
    return Hypergraph(k, m * step + 1, edges)


def loose_cycle(m: int, k: int) -> Hypergraph:
    """Closed loose path: ``n = m(k-1)``; joint vertices have degree 2."""
    if m < 3 or k < 2:
        raise BadParams("loose cycle needs m >= 3 and k >= 2")
    step = k - 1
    n = m * step
    edges = tuple(tuple((i * step + j) % n for j in range(k)) for i in range(m))
    return Hypergraph(k, n, edges)


def star(d: int, k: int) -> Hypergraph:
    """``d`` edges meeting only at vertex 0; ``n = d(k-1)+1``."""
    if d < 1 or k < 2:
        raise BadParams("star needs d >= 1 and k >= 2")
    step = k - 1
    edges = tuple((0,) + tuple(range(1 + i * step, 1 + (i + 1) * step)) for i in range(d))
    return Hypergraph(k, d * step + 1, edges)


_NAMED = {
    "single_edge": lambda p: single_edge(p["k"]),
    "loose_path": lambda p: loose_path(p["m"], p["k"]),
    "loose_cycle": lambda p: loose_cycle(p["m"], p["k"]),
    "star": lambda p: star(p["d"], p["k"]),
}


def make_named(kind: str, **params: int) -> Hypergraph:
    kind = kind.replace("-", "_")
    if kind not in _NAMED:
        raise BadParams(f"unknown family {kind!r}; choose from {sorted(_NAMED)}")
    try:
        return _NAMED[kind](params)
    except KeyError as exc:
        raise BadParams(f"{kind} needs parameter {exc.args[0]!r}") from None


def _pairs(edge) -> list[tuple[int, int]]:
    return list(combinations(edge, 2))


def random_linear(
    k: int, n: int, m_target: int, seed: int, retry_cap: int | None = None
) -> Hypergraph:
    """Rejection-sample a linear k-graph, then link components until connected.

    Uniform k-subsets are accepted when they share no vertex pair with an
    accepted edge. The linking phase can push the edge count past
    ``m_target``.
    """
    if k < 2 or n < k or m_target < 1:
        raise BadParams("need k >= 2, n >= k, m_target >= 1")
    if m_target * k * (k - 1) > n * (n - 1):
        raise Infeasible(
            f"{m_target} linear edges need {m_target * k * (k - 1) // 2} vertex pairs, "
            f"only {n * (n - 1) // 2} exist"
        )
    rng = np.random.default_rng(seed)
    cap = retry_cap if retry_cap is not None else 200 * m_target + 1000
    covered: set[tuple[int, int]] = set()
    edges: list[tuple[int, ...]] = []
    tries = 0
    while len(edges) < m_target:
        if tries >= cap:
            raise Infeasible(f"only {len(edges)} of {m_target} edges after {cap} draws")
        tries += 1
        e = tuple(sorted(int(v) for v in rng.choice(n, size=k, replace=False)))
        ps = _pairs(e)
        if any(p in covered for p in ps):
            continue
        covered.update(ps)
        edges.append(e)
    _link_components(n, k, edges, covered, rng)
    return Hypergraph(k, n, tuple(edges))


def _components(n: int, edges: list[tuple[int, ...]]) -> list[int]:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in edges:
        for w in e[1:]:
            parent[find(w)] = find(e[0])
    return [find(v) for v in range(n)]


def _link_components(n, k, edges, covered, rng) -> None:
    while True:
        comp = _components(n, edges)
        if len(set(comp)) == 1:
            return
        order = [int(v) for v in rng.permutation(n)]
        link = _find_link(order, comp, k, covered)
        if link is None:
            raise Infeasible("cannot join components without breaking linearity")
        covered.update(_pairs(link))
        edges.append(link)


def _find_link(order, comp, k, covered):
    for a in order:
        for b in order:
            if comp[a] == comp[b] or (min(a, b), max(a, b)) in covered:
                continue
            chosen = [a, b]
            for c in order:
                if len(chosen) == k:
                    break
                if c in chosen:
                    continue
                if all((min(c, x), max(c, x)) not in covered for x in chosen):
                    chosen.append(c)
            if len(chosen) == k:
                return tuple(sorted(chosen))
    return None


def enumerate_small(k: int = 3, n_max: int = 7, m_max: int = 3) -> Iterator[Hypergraph]:
    """Every connected linear k-graph on vertex set ``0..n-1``, ``n <= n_max``, ``1 <= m <= m_max``.

    Labelled instances, no isomorphism reduction. Instances come out ordered
    by ``n`` and then lexicographically by edge list.
    """
    if k < 2:
        raise BadParams("k must be >= 2")
    if n_max > ENUM_MAX_N or m_max > ENUM_MAX_M:
        raise TooLarge(f"enumeration capped at n <= {ENUM_MAX_N}, m <= {ENUM_MAX_M}")
    for n in range(k, n_max + 1):
        yield from _enumerate_n(k, n, m_max)


def _enumerate_n(k: int, n: int, m_max: int) -> Iterator[Hypergraph]:
    subsets = list(combinations(range(n), k))
    masks = [sum(1 << v for v in s) for s in subsets]
    count = len(subsets)
    # subsets sharing two or more vertices with subset i (i itself included)
    conflict = [0] * count
    for i in range(count):
        for j in range(count):
            if bin(masks[i] & masks[j]).count("1") >= 2:
                conflict[i] |= 1 << j
    full = (1 << n) - 1
    chosen: list[int] = []

    def connected() -> bool:
        reach = masks[chosen[0]]
        pending = chosen[1:]
        grew = True
        while pending and grew:
            grew = False
            rest = []
            for i in pending:
                if masks[i] & reach:
                    reach |= masks[i]
                    grew = True
                else:
                    rest.append(i)
            pending = rest
        return not pending

    def rec(start: int, allowed: int, cover: int) -> Iterator[Hypergraph]:
        if chosen and cover == full and connected():
            yield Hypergraph(k, n, tuple(subsets[i] for i in chosen))
        if len(chosen) == m_max:
            return
        if bin(cover).count("1") + (m_max - len(chosen)) * (k - 1) < n - (0 if chosen else 1):
            return
        for i in range(start, count):
            if allowed >> i & 1:
                chosen.append(i)
                yield from rec(i + 1, allowed & ~conflict[i], cover | masks[i])
                chosen.pop()

    yield from rec(0, (1 << count) - 1, 0)


@dataclass
class GenSpec:
    kind: str
    k: int
    n: int | None = None
    m: int | None = None
    d: int | None = None
    seed: int | None = None
    count: int = 1
    n_max: int | None = None
    m_max: int | None = None
    constraints: dict = field(default_factory=dict)


def generate(spec: GenSpec) -> list[tuple[str, Hypergraph, dict]]:
    """Build the instances a :class:`GenSpec` describes as ``(id, hypergraph, provenance)``."""
    kind = spec.kind.replace("-", "_")
    base = {k: v for k, v in asdict(spec).items() if v is not None and k != "constraints"}
    out: list[tuple[str, Hypergraph, dict]] = []
    if kind in _NAMED:
        params = {"k": spec.k, "m": spec.m, "d": spec.d}
        H = make_named(kind, **{p: v for p, v in params.items() if v is not None})
        tag = {"single_edge": "", "star": f"-d{spec.d}"}.get(kind, f"-m{spec.m}")
        out.append((f"{kind}-k{spec.k}{tag}", H, base))
    elif kind == "random_linear":
        if spec.n is None or spec.m is None or spec.seed is None:
            raise BadParams("random_linear needs n, m and seed")
        for i in range(spec.count):
            seed = spec.seed + i
            H = random_linear(spec.k, spec.n, spec.m, seed)
            prov = dict(base, seed=seed, count=1)
            out.append((f"random-k{spec.k}-n{spec.n}-m{spec.m}-s{seed}", H, prov))
    elif kind in ("enumerate", "enumerate_all", "enumerate_small"):
        n_max = spec.n_max if spec.n_max is not None else spec.n
        m_max = spec.m_max if spec.m_max is not None else spec.m
        if n_max is None or m_max is None:
            raise BadParams("enumerate needs n_max and m_max")
        for i, H in enumerate(enumerate_small(spec.k, n_max, m_max)):
            out.append((f"enum-k{spec.k}-n{H.n}-m{H.m}-{i:07d}", H, dict(base, index=i)))
    else:
        raise BadParams(f"unknown generator kind {spec.kind!r}")
    return out


def load_manifest(corpus: str | Path) -> dict:
    path = Path(corpus) / MANIFEST
    if not path.exists():
        return {"version": 1, "instances": []}
    return json.loads(path.read_text())


def save_manifest(corpus: str | Path, manifest: dict) -> None:
    path = Path(corpus) / MANIFEST
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def write_corpus(corpus: str | Path, instances: list[tuple[str, Hypergraph, dict]]) -> dict:
    """Write ``.hg`` files and merge their entries into the corpus manifest."""
    corpus = Path(corpus)
    corpus.mkdir(parents=True, exist_ok=True)
    manifest = load_manifest(corpus)
    index = {entry["id"]: entry for entry in manifest["instances"]}
    for ident, H, prov in instances:
        fname = f"{ident}.hg"
        hgio.write(H, corpus / fname)
        entry = index.get(ident)
        if entry is None:
            entry = {"id": ident, "certificates": {}}
            manifest["instances"].append(entry)
            index[ident] = entry
        entry.update(file=fname, spec=prov, k=H.k, n=H.n, m=H.m)
    manifest["instances"].sort(key=lambda e: e["id"])
    save_manifest(corpus, manifest)
    return manifest
