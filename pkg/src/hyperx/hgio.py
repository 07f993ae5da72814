"""Reading and writing hypergraphs as ``.hg`` text or JSON.

``.hg`` layout: a header line ``k n m`` followed by ``m`` lines of ``k``
whitespace-separated vertex ids. Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InvalidHypergraph, ParseError
from .hypercore import Hypergraph, build


def dumps_hg(H: Hypergraph) -> str:
    lines = [f"{H.k} {H.n} {H.m}"]
    lines.extend(" ".join(str(v) for v in e) for e in H.edges)
    return "\n".join(lines) + "\n"


def loads_hg(text: str, source: str | None = None) -> Hypergraph:
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            rows.append((lineno, body.split()))
    if not rows:
        raise ParseError("empty input, expected header 'k n m'", None, source)
    lineno, head = rows[0]
    if len(head) != 3:
        raise ParseError(f"header must be 'k n m', got {len(head)} fields", lineno, source)
    try:
        k, n, m = (int(x) for x in head)
    except ValueError:
        raise ParseError("header fields must be integers", lineno, source) from None
    body_rows = rows[1:]
    if len(body_rows) != m:
        where = body_rows[m][0] if len(body_rows) > m else (body_rows[-1][0] if body_rows else lineno)
        raise ParseError(f"header announces {m} edges, found {len(body_rows)}", where, source)
    edges = []
    first_seen: dict[tuple[int, ...], int] = {}
    for lineno, fields in body_rows:
        if len(fields) != k:
            raise ParseError(f"edge has {len(fields)} vertices, expected {k}", lineno, source)
        try:
            e = [int(x) for x in fields]
        except ValueError:
            raise ParseError("vertex ids must be integers", lineno, source) from None
        try:
            build(k, n, [e])
        except InvalidHypergraph as exc:
            raise ParseError(str(exc), lineno, source) from None
        key = tuple(sorted(e))
        if key in first_seen:
            raise ParseError(
                f"duplicate edge {key} (first on line {first_seen[key]})", lineno, source
            )
        first_seen[key] = lineno
        edges.append(e)
    try:
        return build(k, n, edges)
    except InvalidHypergraph as exc:
        raise ParseError(str(exc), None, source) from None


def dumps_json(H: Hypergraph) -> str:
    return json.dumps(H.to_dict(), separators=(",", ":"))


def loads_json(text: str, source: str | None = None) -> Hypergraph:
    try:
        obj = json.loads(text)
        return build(obj["k"], obj["n"], obj["edges"])
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"bad hypergraph JSON: {exc}", None, source) from None
    except InvalidHypergraph as exc:
        raise ParseError(str(exc), None, source) from None


def read(path: str | Path) -> Hypergraph:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        return loads_json(text, str(path))
    return loads_hg(text, str(path))


def write(H: Hypergraph, path: str | Path) -> None:
    path = Path(path)
    path.write_text(dumps_json(H) + "\n" if path.suffix == ".json" else dumps_hg(H))
