"""Line-oriented text formats for graphs, witnesses and tree decompositions.

Graph::

    p dpm <n> <m> [approx]
    v <id>                     # optional; when present the vertex set is exactly these
    t <id>
    e <u> <v> <length> [index] # length: integer, decimal or a/b

Witness::

    w dpm <fingerprint-hex>
    dv <v> | de <u> <v> | ce <u> <v> <survivor>

Tree decomposition (PACE style)::

    s td <numBags> <maxBagSize> <n>
    b <bagId> <v...>
    <bagId> <bagId>

``#`` starts a comment anywhere on a line.
"""
from __future__ import annotations

import os
import tempfile
from fractions import Fraction
from pathlib import Path

from .graph import (APPROX, EXACT, ContractEdge, DeleteEdge, DeleteVertex,
                    Graph, GraphError, Witness)
from .treedec import TreeDecomposition


class FormatError(ValueError):
    def __init__(self, message, lineno=None, source=None):
        super().__init__(message)
        self.message = message
        self.lineno = lineno
        self.source = source

    def __str__(self):
        where = ":".join(str(x) for x in (self.source, self.lineno) if x is not None)
        return f"{where}: {self.message}" if where else self.message


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected an integer, got {tok!r}", lineno) from None


def _length(tok, mode, lineno):
    try:
        if mode == APPROX:
            if "/" in tok:
                return float(Fraction(tok))
            return float(tok)
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad length {tok!r}", lineno) from None


def _format_length(length, mode):
    if mode == APPROX:
        return repr(float(length))
    return str(length)


# -- graphs --

def parse_graph(text: str, source=None) -> Graph:
    header = None
    explicit = []
    terminals = []
    edges = []
    for lineno, tok in _lines(text):
        try:
            kind = tok[0]
            if kind == "p":
                if header is not None:
                    raise FormatError("duplicate header", lineno)
                if len(tok) not in (4, 5) or tok[1] != "dpm":
                    raise FormatError("header must be 'p dpm <n> <m> [approx]'", lineno)
                mode = EXACT
                if len(tok) == 5:
                    if tok[4] not in (EXACT, APPROX):
                        raise FormatError(f"unknown mode {tok[4]!r}", lineno)
                    mode = tok[4]
                header = (_int(tok[2], lineno), _int(tok[3], lineno), mode)
                continue
            if header is None:
                raise FormatError("missing 'p dpm' header before data", lineno)
            n, _, mode = header
            if kind == "v" and len(tok) == 2:
                explicit.append(_check_id(_int(tok[1], lineno), n, lineno))
            elif kind == "t" and len(tok) == 2:
                terminals.append(_check_id(_int(tok[1], lineno), n, lineno))
            elif kind == "e" and len(tok) in (4, 5):
                u = _check_id(_int(tok[1], lineno), n, lineno)
                v = _check_id(_int(tok[2], lineno), n, lineno)
                if u == v:
                    raise FormatError(f"self-loop at vertex {u}", lineno)
                length = _length(tok[3], mode, lineno)
                if length < 0:
                    raise FormatError(f"negative length {tok[3]}", lineno)
                index = _int(tok[4], lineno) if len(tok) == 5 else len(edges) + 1
                edges.append((u, v, length, index, lineno))
            else:
                raise FormatError(f"unrecognised line {' '.join(tok)!r}", lineno)
        except FormatError as exc:
            exc.source = source
            raise
    if header is None:
        raise FormatError("empty graph file", source=source)
    n, m, mode = header
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}", source=source)
    vertices = set(explicit) if explicit else set(range(1, n + 1))
    vertices |= set(terminals)
    for u, v, _, _, lineno in edges:
        if u not in vertices or v not in vertices:
            raise FormatError(f"edge ({u},{v}) uses an undeclared vertex", lineno, source)
    try:
        return Graph.from_edges(vertices, terminals,
                                [(u, v, l, i) for u, v, l, i, _ in edges], mode)
    except GraphError as exc:
        raise FormatError(str(exc), source=source) from None


def _check_id(v, n, lineno):
    if not 1 <= v <= n:
        raise FormatError(f"vertex id {v} out of range 1..{n}", lineno)
    return v


def format_graph(g: Graph, comment: str | None = None) -> str:
    """Serialise ``g``; the output always carries explicit vertices and edge indices."""
    n = max(g.vertices, default=0)
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    suffix = " approx" if g.mode == APPROX else ""
    out.append(f"p dpm {n} {g.m}{suffix}")
    if g.vertices != list(range(1, n + 1)):
        out.extend(f"v {v}" for v in g.vertices)
    out.extend(f"t {t}" for t in sorted(g.terminals))
    for u, v, l, i in g.edges():
        out.append(f"e {u} {v} {_format_length(l, g.mode)} {i}")
    return "\n".join(out) + "\n"


# -- witnesses --

def parse_witness(text: str, source=None) -> Witness:
    fingerprint = None
    ops = []
    for lineno, tok in _lines(text):
        kind = tok[0]
        if kind == "w":
            if len(tok) != 3 or tok[1] != "dpm":
                raise FormatError("header must be 'w dpm <fingerprint>'", lineno, source)
            fingerprint = tok[2]
            continue
        if fingerprint is None:
            raise FormatError("missing 'w dpm' header", lineno, source)
        args = [_int(t, lineno) for t in tok[1:]]
        if kind == "dv" and len(args) == 1:
            ops.append(DeleteVertex(*args))
        elif kind == "de" and len(args) == 2:
            ops.append(DeleteEdge(*args))
        elif kind == "ce" and len(args) == 3:
            ops.append(ContractEdge(*args))
        else:
            raise FormatError(f"unrecognised op {' '.join(tok)!r}", lineno, source)
    if fingerprint is None:
        raise FormatError("empty witness file", source=source)
    return Witness(fingerprint, tuple(ops))


def format_witness(w: Witness) -> str:
    lines = [f"w dpm {w.fingerprint}"]
    lines.extend(str(op) for op in w.ops)
    return "\n".join(lines) + "\n"


# -- tree decompositions --

def parse_td(text: str, source=None) -> TreeDecomposition:
    header = None
    bags = {}
    tree = []
    for lineno, tok in _lines(text):
        if tok[0] == "s":
            if len(tok) != 5 or tok[1] != "td":
                raise FormatError("header must be 's td <bags> <maxBag> <n>'", lineno, source)
            header = tuple(_int(t, lineno) for t in tok[2:])
        elif header is None:
            raise FormatError("missing 's td' header", lineno, source)
        elif tok[0] == "b":
            if len(tok) < 2:
                raise FormatError("bag line needs an id", lineno, source)
            bid = _int(tok[1], lineno)
            if not 1 <= bid <= header[0]:
                raise FormatError(f"bag id {bid} out of range", lineno, source)
            if bid in bags:
                raise FormatError(f"duplicate bag {bid}", lineno, source)
            bags[bid] = frozenset(_int(t, lineno) for t in tok[2:])
        elif len(tok) == 2:
            a, b = (_int(t, lineno) for t in tok)
            for x in (a, b):
                if not 1 <= x <= header[0]:
                    raise FormatError(f"bag id {x} out of range", lineno, source)
            tree.append((a - 1, b - 1))
        else:
            raise FormatError(f"unrecognised line {' '.join(tok)!r}", lineno, source)
    if header is None:
        raise FormatError("empty decomposition file", source=source)
    nbags = header[0]
    if len(bags) != nbags:
        raise FormatError(f"header announces {nbags} bags, found {len(bags)}", source=source)
    return TreeDecomposition([bags[i] for i in range(1, nbags + 1)], tree)


def format_td(td: TreeDecomposition, n: int) -> str:
    maxbag = max((len(b) for b in td.bags), default=0)
    lines = [f"s td {len(td.bags)} {maxbag} {n}"]
    for i, bag in enumerate(td.bags, start=1):
        lines.append(" ".join(["b", str(i)] + [str(v) for v in sorted(bag)]))
    lines.extend(f"{a + 1} {b + 1}" for a, b in td.tree_edges)
    return "\n".join(lines) + "\n"


# -- files --

def write_atomic(path, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"), source=str(path))


def write_graph(path, g: Graph, comment=None) -> None:
    write_atomic(path, format_graph(g, comment))


def read_witness(path) -> Witness:
    return parse_witness(Path(path).read_text(encoding="utf-8"), source=str(path))


def write_witness(path, w: Witness) -> None:
    write_atomic(path, format_witness(w))


def read_td(path) -> TreeDecomposition:
    return parse_td(Path(path).read_text(encoding="utf-8"), source=str(path))


def write_td(path, td: TreeDecomposition, n: int) -> None:
    write_atomic(path, format_td(td, n))
