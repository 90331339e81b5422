"""Reading and writing matrix and graph files.

Matrix files hold a ``d n`` header followed by ``d`` rows of ``n``
integers, or a JSON document ``{"rows": [[...], ...]}``.  Graph files hold
one ``u v`` edge per line.  In both text formats ``#`` starts a comment.
"""
from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Iterator

import numpy as np

from .errors import ParseError
from .graphs import Graph

_INT = re.compile(r"[+-]?\d+\Z")


def _tokens(text: str) -> Iterator[tuple[int, list[tuple[int, str]]]]:
    """Yield ``(line_number, [(column, token), ...])`` for non-blank, non-comment lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]
        if toks:
            yield lineno, toks


def _int(tok: str, line: int, col: int, source: str | None) -> int:
    if not _INT.match(tok):
        raise ParseError(f"expected an integer, found {tok!r}", line, col, source)
    return int(tok)


def parse_matrix(text: str, source: str | None = None) -> np.ndarray:
    """Parse a matrix file into an object array of Python ints."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_matrix_json(text, source)
    lines = list(_tokens(text))
    if not lines:
        raise ParseError("empty matrix file", source=source)
    lineno, header = lines[0]
    if len(header) != 2:
        col = header[2][0] if len(header) > 2 else header[-1][0]
        raise ParseError("header must be 'd n'", lineno, col, source)
    d, n = (_int(t, lineno, c, source) for c, t in header)
    if d < 0 or n < 0:
        raise ParseError("negative dimension in header", lineno, header[0][0], source)
    body = lines[1:]
    M = np.zeros((len(body), n), dtype=object)
    for r, (ln, toks) in enumerate(body):
        if len(toks) != n:
            col = toks[n][0] if len(toks) > n else toks[-1][0] + len(toks[-1][1])
            raise ParseError(f"row has {len(toks)} entries, expected {n}", ln, col, source)
        for c, (col, tok) in enumerate(toks):
            M[r, c] = _int(tok, ln, col, source)
    if len(body) != d:
        where = body[d][0] if len(body) > d else (body[-1][0] if body else lineno) + 1
        raise ParseError(f"header declares {d} rows, found {len(body)}", where, 1, source)
    return M


def _parse_matrix_json(text: str, source: str | None) -> np.ndarray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, source) from None
    rows = doc.get("rows") if isinstance(doc, dict) else None
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("expected {\"rows\": [[...], ...]}", 1, 1, source)
    n = len(rows[0]) if rows else int(doc.get("cols", 0))
    M = np.zeros((len(rows), n), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ParseError(f"row {i + 1} has {len(row)} entries, expected {n}", source=source)
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, int):
                raise ParseError(f"entry ({i + 1}, {j + 1}) is not an integer: {x!r}", source=source)
            M[i, j] = x
    return M


def format_matrix(M) -> str:
    M = np.asarray(M, dtype=object)
    lines = [f"{M.shape[0]} {M.shape[1]}"]
    lines += [" ".join(str(int(x)) for x in row) for row in M]
    return "\n".join(lines) + "\n"


def parse_graph(text: str, source: str | None = None) -> Graph:
    """Parse an edge list; a repeated line is a parallel edge."""
    edges = []
    for ln, toks in _tokens(text):
        if len(toks) != 2:
            col = toks[2][0] if len(toks) > 2 else toks[-1][0] + len(toks[-1][1])
            raise ParseError("expected 'u v'", ln, col, source)
        (cu, u), (cv, v) = toks
        u, v = _int(u, ln, cu, source), _int(v, ln, cv, source)
        if u < 0:
            raise ParseError("vertex labels must be non-negative", ln, cu, source)
        if v < 0:
            raise ParseError("vertex labels must be non-negative", ln, cv, source)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", ln, cu, source)
        edges.append((u, v))
    return Graph(edges)


def format_graph(G: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in G.edges)


def read_matrix(path) -> np.ndarray:
    p = Path(path)
    return parse_matrix(p.read_text(), source=str(p))


def read_graph(path) -> Graph:
    p = Path(path)
    return parse_graph(p.read_text(), source=str(p))
