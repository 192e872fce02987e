"""Reading and writing graphs, colourings and permutations.

Edge-list format: first line ``n m``, then m lines ``u v``. graph6 input is
recognised by its first byte (>= 63, no spaces) or a ``>>graph6<<`` header.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .errors import GraphFormatError
from .graph import Graph, make_graph

GRAPH6_HEADER = ">>graph6<<"


# -- edge list -------------------------------------------------------------------

def _ints(line: str, lineno: int, count: int | None = None) -> list[int]:
    parts = line.split()
    if count is not None and len(parts) != count:
        raise GraphFormatError(f"expected {count} integers, got {len(parts)}", lineno)
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise GraphFormatError(f"not an integer in {line.strip()!r}", lineno) from None


def parse_edge_list(text: str) -> Graph:
    lines = text.split("\n")
    # drop trailing blank lines (a final newline is normal)
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise GraphFormatError("empty input", 1)
    n, m = _ints(lines[0], 1, 2)
    if n < 0 or m < 0:
        raise GraphFormatError("negative vertex or edge count", 1)
    if len(lines) - 1 < m:
        raise GraphFormatError(f"header announces {m} edges but only {len(lines) - 1} follow",
                               len(lines) + 1)
    if len(lines) - 1 > m:
        raise GraphFormatError(f"extra line after the {m} announced edges", m + 2)
    edges = []
    seen = set()
    for i, line in enumerate(lines[1:], start=2):
        u, v = _ints(line, i, 2)
        if u == v:
            raise GraphFormatError(f"loop edge ({u}, {v})", i)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"endpoint out of range in edge ({u}, {v}) for n={n}", i)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge ({u}, {v})", i)
        seen.add(key)
        edges.append(key)
    return make_graph(n, edges)


def format_edge_list(G: Graph) -> str:
    return "".join([f"{G.n} {G.m}\n"] + [f"{u} {v}\n" for u, v in G.edges])


# -- graph6 -------------------------------------------------------------------------

def _decode_n(data: bytes, lineno: int) -> tuple[int, int]:
    if not data:
        raise GraphFormatError("empty graph6 string", lineno)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise GraphFormatError("truncated graph6 size field", lineno)
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise GraphFormatError("truncated graph6 size field", lineno)
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def parse_graph6(line: str | bytes, lineno: int = 1) -> Graph:
    data = line.encode("ascii") if isinstance(line, str) else line
    data = data.strip()
    if data.startswith(GRAPH6_HEADER.encode()):
        data = data[len(GRAPH6_HEADER):]
    if any(not 63 <= b <= 126 for b in data):
        raise GraphFormatError("graph6 bytes must lie in 63..126", lineno)
    n, pos = _decode_n(data, lineno)
    nbits = n * (n - 1) // 2
    body = data[pos:]
    if len(body) != (nbits + 5) // 6:
        raise GraphFormatError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}", lineno)
    bits = []
    for b in body:
        x = b - 63
        bits.extend((x >> s) & 1 for s in range(5, -1, -1))
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return make_graph(n, edges)


def format_graph6(G: Graph) -> str:
    n = G.n
    if n <= 62:
        out = [n + 63]
    elif n <= 258047:
        out = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        out = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = [int(G.has_edge(u, v)) for v in range(1, n) for u in range(v)]
    bits += [0] * (-len(bits) % 6)
    for i in range(0, len(bits), 6):
        x = 0
        for b in bits[i:i + 6]:
            x = (x << 1) | b
        out.append(x + 63)
    return bytes(out).decode("ascii")


# -- dispatch ------------------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Edge list or graph6, detected from the first non-blank line."""
    first = next((ln for ln in text.split("\n") if ln.strip()), "")
    stripped = first.strip()
    if stripped.startswith(GRAPH6_HEADER) or (stripped and ord(stripped[0]) >= 63 and " " not in stripped):
        graph_lines = [ln for ln in text.split("\n") if ln.strip()]
        if len(graph_lines) != 1:
            raise GraphFormatError("expected exactly one graph6 line", 2)
        lineno = text.split("\n").index(first) + 1
        return parse_graph6(stripped, lineno)
    return parse_edge_list(text)


def read_graph(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text()
    except UnicodeDecodeError:
        raise GraphFormatError("file is not text", 1) from None
    return parse_graph(text)


def write_graph(G: Graph, path: str | Path, fmt: str = "edgelist") -> None:
    if fmt == "edgelist":
        Path(path).write_text(format_edge_list(G))
    elif fmt == "graph6":
        Path(path).write_text(format_graph6(G) + "\n")
    else:
        raise ValueError(f"unknown graph format {fmt!r}")


# -- colourings and permutations ------------------------------------------------------

def parse_coloring(text: str) -> tuple[int, ...]:
    """Whitespace-separated colour of each host vertex, in vertex order."""
    out = []
    for i, line in enumerate(text.split("\n"), start=1):
        out.extend(_ints(line, i))
    return tuple(out)


def read_coloring(path: str | Path) -> tuple[int, ...]:
    return parse_coloring(Path(path).read_text())


def format_permutations(perms: Sequence[Sequence[int]]) -> str:
    return "".join(" ".join(map(str, g)) + "\n" for g in perms)


def parse_permutations(text: str) -> list[tuple[int, ...]]:
    perms = []
    for i, line in enumerate(text.split("\n"), start=1):
        if not line.strip():
            continue
        g = tuple(_ints(line, i))
        if sorted(g) != list(range(len(g))):
            raise GraphFormatError(f"not a permutation of 0..{len(g) - 1}", i)
        if perms and len(g) != len(perms[0]):
            raise GraphFormatError("permutations of different degree", i)
        perms.append(g)
    return perms

