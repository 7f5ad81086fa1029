"""graph6 encoding (bit-exact with the nauty/networkx format)."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

from .graph import Graph, GraphError, pair_order


class Graph6Error(GraphError):
    pass


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 1 << 36:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise Graph6Error(f"n={n} too large for graph6")


def _decode_n(data: bytes) -> tuple[int, int]:
    if not data:
        raise Graph6Error("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte length header")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        return n, 8
    if len(data) < 4:
        raise Graph6Error("truncated 4-byte length header")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, 4


def encode(g: Graph) -> str:
    bits = [(g.adj[i] >> j) & 1 for i, j in pair_order(g.n)]
    bits += [0] * (-len(bits) % 6)
    body = []
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        body.append(chr(v + 63))
    return _encode_n(g.n) + "".join(body)


def decode(text: str | bytes) -> Graph:
    if isinstance(text, str):
        text = text.strip()
        if text.startswith(">>graph6<<"):
            text = text[len(">>graph6<<"):]
        try:
            data = text.encode("ascii")
        except UnicodeEncodeError:
            raise Graph6Error("graph6 must be printable ASCII") from None
    else:
        data = text.strip()
    bad = [c for c in data if not 63 <= c <= 126]
    if bad:
        raise Graph6Error(f"character {chr(bad[0])!r} outside graph6 range 63..126")
    n, off = _decode_n(data)
    if n < 1:
        raise Graph6Error("graph6 with zero vertices is not a Graph")
    body = data[off:]
    npairs = n * (n - 1) // 2
    need = (npairs + 5) // 6
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(body)}")
    adj = [0] * n
    pairs = pair_order(n)
    k = 0
    for c in body:
        v = c - 63
        for s in range(5, -1, -1):
            bit = (v >> s) & 1
            if k < npairs:
                if bit:
                    i, j = pairs[k]
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
            elif bit:
                raise Graph6Error("nonzero padding bits")
            k += 1
    return Graph(n, tuple(adj))


def read_corpus(path: str | Path) -> Iterator[Graph]:
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                yield decode(line)
            except Graph6Error as exc:
                raise Graph6Error(f"{path}:{lineno}: {exc}") from None


def write_corpus(path: str | Path, graphs: Iterable[Graph]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for g in graphs:
            fh.write(encode(g) + "\n")
