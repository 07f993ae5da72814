"""Command line front end: ``hyperx gen | spectral | certify | verify | walks``.

Inputs are ``.hg``/``.json`` files or corpus directories (a directory with a
``manifest.json`` written by ``gen``). Reports go to stdout unless
``--output`` names a file. Exit codes: 0 everything passed, 1 a violation or
numerical failure, 2 usage or parse error, 3 unknown certificates were met
without ``--assume-free``.

``HYPERX_THREADS`` caps the number of worker processes. Output order never
depends on it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from . import bounds, genlab, hgio
from .berge import BudgetExhausted, Verdict, find_berge, parse_pattern
from .errors import BadParams, HyperxError, NoConvergence, NotCertifiedFree, Overflow
from .hypercore import Hypergraph
from .spectral import DEFAULT_MAX_ITER, DEFAULT_TOL, check_alpha, max_entry_vertex, spectral_radius
from .walks import walk_counts

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3

DEFAULT_ALPHAS = (0.0, 0.25, 0.5)


@dataclass
class Instance:
    ident: str
    H: Hypergraph
    corpus: Path | None = None
    certificates: dict = field(default_factory=dict)


def worker_count() -> int:
    cap = os.environ.get("HYPERX_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise BadParams(f"HYPERX_THREADS must be an integer, got {cap!r}") from None
    return n


def ordered_map(fn: Callable, items: Sequence) -> list:
    """``map`` across worker processes; results come back in input order."""
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def load_inputs(paths: Sequence[str]) -> list[Instance]:
    out: list[Instance] = []
    for p in paths:
        path = Path(p)
        if path.is_dir():
            manifest = genlab.load_manifest(path)
            if not manifest["instances"]:
                raise BadParams(f"{path} has no {genlab.MANIFEST} or no instances")
            for entry in manifest["instances"]:
                H = hgio.read(path / entry["file"])
                certs = {dsl: c["verdict"] for dsl, c in entry.get("certificates", {}).items()}
                out.append(Instance(entry["id"], H, path, certs))
        else:
            out.append(Instance(path.stem, hgio.read(path)))
    return out


def emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# gen


def cmd_gen(args) -> int:
    spec = genlab.GenSpec(
        kind=args.kind,
        k=args.k,
        n=args.n,
        m=args.m,
        d=args.d,
        seed=args.seed,
        count=args.count,
        n_max=args.n_max,
        m_max=args.m_max,
    )
    instances = genlab.generate(spec)
    genlab.write_corpus(args.out, instances)
    print(f"gen: wrote {len(instances)} instance(s) to {args.out}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# spectral

SPECTRAL_COLUMNS = ("instance", "alpha", "rho", "lo", "hi", "iterations", "residual", "max_vertex")


def _spectral_job(job):
    ident, H, alpha, tol, max_iter = job
    try:
        return ident, alpha, spectral_radius(H, alpha, tol, max_iter), None
    except (NoConvergence, HyperxError) as exc:
        return ident, alpha, None, str(exc)


def cmd_spectral(args) -> int:
    inputs = load_inputs(args.inputs)
    jobs = [(i.ident, i.H, a, args.tol, args.max_iter) for i in inputs for a in args.alpha]
    results = ordered_map(_spectral_job, jobs)
    failed = 0
    rows, lines = [], []
    for ident, alpha, res, err in results:
        if res is None:
            failed += 1
            print(f"spectral: {ident} alpha={alpha}: {err}", file=sys.stderr)
            continue
        u = max_entry_vertex(res)
        rows.append([
            ident, repr(alpha), repr(res.rho), repr(res.bracket[0]), repr(res.bracket[1]),
            res.iterations, repr(res.residual), u,
        ])
        lines.append(json.dumps({"instance": ident, **res.to_dict()}, sort_keys=True))
    if args.format == "json":
        emit("".join(line + "\n" for line in lines), args.output)
    else:
        emit(_csv(SPECTRAL_COLUMNS, rows), args.output)
    return EXIT_VIOLATION if failed else EXIT_OK


# ---------------------------------------------------------------------------
# certify

CERTIFY_COLUMNS = ("instance", "pattern", "verdict", "witness")


def _certify_job(job):
    ident, H, dsls, budget = job
    out = []
    for dsl in dsls:
        found = find_berge(H, parse_pattern(dsl), budget)
        if found is None:
            out.append((dsl, Verdict.FREE.value, None))
        elif isinstance(found, BudgetExhausted):
            out.append((dsl, Verdict.UNKNOWN.value, None))
        else:
            out.append((dsl, Verdict.CONTAINS.value, found.to_dict()))
    return ident, out


def cmd_certify(args) -> int:
    dsls = [parse_pattern(p).dsl for p in args.pattern]
    inputs = load_inputs(args.inputs)
    results = ordered_map(_certify_job, [(i.ident, i.H, dsls, args.budget) for i in inputs])
    rows = []
    unknown = 0
    by_corpus: dict[Path, dict[str, list]] = {}
    for inst, (ident, verdicts) in zip(inputs, results):
        for dsl, verdict, witness in verdicts:
            unknown += verdict == Verdict.UNKNOWN.value
            rows.append([
                ident, dsl, verdict,
                json.dumps(witness, sort_keys=True, separators=(",", ":")) if witness else "",
            ])
        if inst.corpus is not None:
            by_corpus.setdefault(inst.corpus, {})[ident] = verdicts
    for corpus, updates in by_corpus.items():
        manifest = genlab.load_manifest(corpus)
        for entry in manifest["instances"]:
            for dsl, verdict, witness in updates.get(entry["id"], ()):
                record = {"verdict": verdict, "budget": args.budget}
                if witness:
                    record["witness"] = witness
                entry.setdefault("certificates", {})[dsl] = record
        genlab.save_manifest(corpus, manifest)
    emit(_csv(CERTIFY_COLUMNS, rows), args.output)
    return EXIT_UNKNOWN if unknown else EXIT_OK


# ---------------------------------------------------------------------------
# verify


def select(selectors: Sequence[str], key: str) -> bool:
    for s in selectors:
        if s == "all" or s == key or key.startswith(s + "-"):
            return True
    return False


def _skipped(ident, key, alpha, params, status) -> bounds.BoundReport:
    return bounds.BoundReport(
        instance=ident, theorem=key, alpha=alpha, params=params,
        lhs=None, rhs=None, holds=None, certificate=status, note="hypothesis not certified",
    )


def _cert_state(certs: dict, patterns) -> str:
    states = [certs.get(G.dsl, "missing") for G in patterns]
    for s in ("contains", "unknown", "missing"):
        if s in states:
            return s
    return "free"


def _suites(inst: Instance, ls, sts):
    """Cycle lengths and (s, t) pairs to check: explicit flags, else the certificates on file."""
    certs = inst.certificates
    if ls:
        cyc = list(ls)
    else:
        cyc = sorted(
            int(d.split(":")[1]) for d in certs if d.startswith("cycle:") and int(d.split(":")[1]) >= 5
        )
    if sts:
        book = list(sts)
    else:
        pages = sorted(int(d.split(":")[1]) for d in certs if d.startswith("book:"))
        ts = sorted(int(d.split(",")[1]) for d in certs if d.startswith("kst:2,"))
        book = [(s, t) for s in pages for t in ts]
    if inst.H.k != 3:
        cyc = []
    # inferred suites drop hypotheses the instance is known to violate
    if not ls:
        cyc = [l for l in cyc if _cert_state(certs, bounds.required_patterns_cycle(l)) != "contains"]
    if not sts:
        book = [
            (s, t) for s, t in book
            if _cert_state(certs, bounds.required_patterns_book(s, t)) != "contains"
        ]
    return cyc, book


def verify_instance(job) -> tuple[list[bounds.BoundReport], int]:
    """All selected rows for one instance and the number of rows skipped for unknown certificates."""
    inst, alphas, selectors, ls, sts, tol, max_iter, assume_free = job
    H, ident = inst.H, inst.ident
    sel = lambda key: select(selectors, key)  # noqa: E731
    spectra = {a: spectral_radius(H, a, tol, max_iter) for a in alphas}
    rho0 = spectra[0.0] if 0.0 in spectra else spectral_radius(H, 0.0, tol, max_iter)
    reports: list[bounds.BoundReport] = []
    unknown_skips = 0
    for a in alphas:
        res = spectra[a]
        if sel(bounds.WALK):
            reports.append(bounds.check_walk_bound(H, res, ident))
        if sel(bounds.LINEAR):
            reports.append(bounds.check_linear_bound(H, res, ident))
    us = list(dict.fromkeys(max_entry_vertex(spectra[a]) for a in alphas))
    cyc, book = _suites(inst, ls, sts)

    for l in cyc:
        patterns = bounds.required_patterns_cycle(l)
        try:
            cert = bounds.hypothesis_status(inst.certificates, patterns, assume_free)
        except NotCertifiedFree:
            state = _cert_state(inst.certificates, patterns)
            keys = [k for k in bounds.CYCLE_THEOREMS + bounds.CYCLE_CLAIMS + ("cycle-chain",) if sel(k)]
            unknown_skips += len(keys) if state == "unknown" else 0
            reports.extend(_skipped(ident, k, None, {"l": l}, state) for k in keys)
            continue
        certs = inst.certificates
        for i, a in enumerate(alphas):
            rows = bounds.check_cycle_theorems(
                H, spectra[a], l, certs, assume_free, ident, rho0 if i == 0 else None
            )
            reports.extend(r for r in rows if sel(r.theorem))
            if sel("cycle-chain"):
                reports.append(_chain_report(ident, "cycle-chain", a, {"l": l}, cert,
                                             bounds.cycle_chain(H, max_entry_vertex(spectra[a]), l, a)))
        for u in us:
            q = bounds.measure_cycle_quantities(H, u)
            rows = bounds.cycle_claim_reports(q, l, ident, cert, aux_check=sel("cycle-aux-graph"))
            reports.extend(r for r in rows if sel(r.theorem))

    for s, t in book:
        patterns = bounds.required_patterns_book(s, t)
        params = {"k": H.k, "s": s, "t": t}
        try:
            cert = bounds.hypothesis_status(inst.certificates, patterns, assume_free)
        except NotCertifiedFree:
            state = _cert_state(inst.certificates, patterns)
            keys = [k for k in bounds.BOOK_THEOREMS + bounds.BOOK_CLAIMS + ("book-chain",) if sel(k)]
            unknown_skips += len(keys) if state == "unknown" else 0
            reports.extend(_skipped(ident, k, None, params, state) for k in keys)
            continue
        certs = inst.certificates
        in_range = t <= bounds.book_t_max(H.k, s)
        for i, a in enumerate(alphas):
            if in_range:
                rows = bounds.check_book_theorems(
                    H, spectra[a], s, t, certs, assume_free, ident, rho0 if i == 0 else None
                )
            else:
                rows = [bounds.check_book_local(H, spectra[a], s, t, certs, assume_free, ident)]
            reports.extend(r for r in rows if sel(r.theorem))
            if in_range and sel("book-chain"):
                reports.append(_chain_report(ident, "book-chain", a, params, cert,
                                             bounds.book_chain(H, max_entry_vertex(spectra[a]), s, t, a)))
        for u in us:
            q = bounds.measure_book_quantities(H, u)
            reports.extend(r for r in bounds.book_claim_reports(q, s, t, ident, cert) if sel(r.theorem))
    return reports, unknown_skips


def _chain_report(ident, key, alpha, params, cert, chain) -> bounds.BoundReport:
    """Local RHS as lhs, closed-form RHS as rhs; holds iff all three are in order."""
    return bounds.BoundReport(
        instance=ident, theorem=key, alpha=alpha, params=params,
        lhs=chain[0], rhs=chain[2], holds=bounds.chain_ordered(chain), certificate=cert,
    )


def cmd_verify(args) -> int:
    inputs = load_inputs(args.inputs)
    selectors = [s.strip() for s in args.theorems.split(",") if s.strip()]
    known = bounds.ALL_KEYS + ("cycle-chain", "book-chain")
    for s in selectors:
        if s != "all" and not any(select([s], k) for k in known):
            raise BadParams(f"unknown theorem selector {s!r}")
    sts = [tuple(int(x) for x in st.split(",")) for st in args.st or ()]
    if any(len(st) != 2 for st in sts):
        raise BadParams("--st takes 's,t'")
    jobs = [
        (inst, tuple(args.alpha), selectors, args.l, sts, args.tol, args.max_iter, args.assume_free)
        for inst in inputs
    ]
    reports: list[bounds.BoundReport] = []
    unknown = 0
    for rows, skips in ordered_map(verify_instance, jobs):
        reports.extend(rows)
        unknown += skips
    text = bounds.reports_to_jsonl(reports) if args.format == "json" else bounds.reports_to_csv(reports)
    emit(text, args.output)
    holds = sum(1 for r in reports if r.holds is True)
    violations = sum(1 for r in reports if r.holds is False)
    skipped = sum(1 for r in reports if r.holds is None)
    print(
        f"verify: {len(reports)} rows, {holds} hold, {violations} violations, {skipped} skipped"
        + (f" ({unknown} for unknown certificates)" if unknown else ""),
        file=sys.stderr,
    )
    if violations:
        return EXIT_VIOLATION
    return EXIT_UNKNOWN if unknown else EXIT_OK


# ---------------------------------------------------------------------------
# walks


def cmd_walks(args) -> int:
    (inst,) = load_inputs([args.input])
    try:
        table = walk_counts(inst.H, args.h_max)
    except Overflow as exc:
        print(f"walks: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    emit(table.to_csv(), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _alpha(text: str) -> float:
    try:
        return check_alpha(float(text))
    except (ValueError, BadParams) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _pattern(text: str) -> str:
    try:
        parse_pattern(text)
    except BadParams as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperx", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a corpus of linear k-graphs")
    g.add_argument("--kind", required=True,
                   help="single-edge | loose-path | loose-cycle | star | random-linear | enumerate")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--d", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--n-max", type=int)
    g.add_argument("--m-max", type=int)
    g.add_argument("--out", default="corpus", help="corpus directory (default: corpus)")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("spectral", help="alpha-spectral radius and Perron vector")
    s.add_argument("inputs", nargs="+", help=".hg/.json files or corpus directories")
    s.add_argument("--alpha", type=_alpha, nargs="+", default=[0.0])
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--output")
    s.set_defaults(func=cmd_spectral)

    c = sub.add_parser("certify", help="decide Berge-freeness for patterns")
    c.add_argument("inputs", nargs="+")
    c.add_argument("--pattern", type=_pattern, action="append", required=True,
                   help="pattern DSL, e.g. cycle:5, book:2, kst:2,3 (repeatable)")
    c.add_argument("--budget", type=int, default=5_000_000, help="search-node budget per pattern")
    c.add_argument("--output")
    c.set_defaults(func=cmd_certify)

    v = sub.add_parser("verify", help="check bounds and claims on certified instances")
    v.add_argument("inputs", nargs="+")
    v.add_argument("--theorems", default="all",
                   help="comma-separated keys or prefixes, e.g. cycle-rho,book,walk")
    v.add_argument("--alpha", type=_alpha, nargs="+", default=list(DEFAULT_ALPHAS))
    v.add_argument("--l", type=int, action="append", help="cycle length (repeatable)")
    v.add_argument("--st", action="append", help="book pages and K_{2,t} part size as 's,t'")
    v.add_argument("--tol", type=float, default=DEFAULT_TOL)
    v.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    v.add_argument("--assume-free", action="store_true",
                   help="treat missing or unknown certificates as free (rows marked assumed)")
    v.add_argument("--format", choices=("csv", "json"), default="csv")
    v.add_argument("--output")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("walks", help="Berge walk counts per vertex")
    w.add_argument("input")
    w.add_argument("--h-max", type=int, default=3)
    w.add_argument("--output")
    w.set_defaults(func=cmd_walks)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoConvergence as exc:
        print(f"hyperx {args.command}: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (HyperxError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"hyperx {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
