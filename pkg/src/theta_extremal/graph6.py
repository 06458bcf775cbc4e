"""graph6 encoding (short and long size forms) and file loading helpers."""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError
from .graph import Graph, format_edge_list, from_edge_list, parse_edge_list

HEADER = ">>graph6<<"


def _encode_n(n: int) -> list[int]:
    if n < 63:
        return [n]
    if n < 258048:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    if n < 1 << 36:
        return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    raise ValueError("graph too large for graph6")


def encode_graph6(g: Graph) -> str:
    n = g.vertex_count
    out = _encode_n(n)
    bits = []
    for j in range(1, n):
        nb = g.neighbor_set(j)
        for i in range(j):
            bits.append(1 if i in nb else 0)
    bits.extend([0] * (-len(bits) % 6))
    for k in range(0, len(bits), 6):
        chunk = bits[k : k + 6]
        out.append(sum(b << (5 - t) for t, b in enumerate(chunk)))
    return "".join(chr(c + 63) for c in out)


def decode_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER) :]
    if not s:
        raise ParseError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= c < 64 for c in data):
        raise ParseError("graph6 string contains characters outside '?'..'~'")
    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise ParseError("truncated long-form graph6 header")
        n, pos = 0, 8
        for c in data[2:8]:
            n = (n << 6) | c
    else:
        if len(data) < 4:
            raise ParseError("truncated graph6 header")
        n, pos = (data[1] << 12) | (data[2] << 6) | data[3], 4
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != expected:
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {expected} for n={n}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    if nbits % 6 and body[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise ParseError("non-zero padding bits in graph6 body")
    return from_edge_list(n, edges)


def load_graph(path: str | Path) -> Graph:
    """Read a graph from a graph6 file (``.g6``, first line) or a plain edge list."""
    text = Path(path).read_text()
    if str(path).endswith(".g6"):
        line = text.strip().splitlines()
        if not line:
            raise ParseError(f"{path}: empty graph6 file")
        return decode_graph6(line[0])
    return parse_edge_list(text)


def save_graph(g: Graph, path: str | Path) -> None:
    if str(path).endswith(".g6"):
        Path(path).write_text(encode_graph6(g) + "\n")
    else:
        Path(path).write_text(format_edge_list(g))
