"""Edge-list and graph6 readers and writers."""

from __future__ import annotations

from .exceptions import GraphFormatError
from .graph_core import Graph

GRAPH6_HEADER = ">>graph6<<"
_SHORT_N_MAX = 62
_LONG_N_MAX = 258047


def parse_edgelist(text: str) -> Graph:
    """Read ``"n m"`` followed by ``m`` lines ``"u v"`` (0-indexed, '#' comments)."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append((lineno, line))
    if not lines:
        raise GraphFormatError("empty edge list: expected a header line 'n m'")

    def ints(lineno, line):
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            return int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {line!r}") from None

    n, m = ints(*lines[0])
    if n < 1 or m < 0:
        raise GraphFormatError(f"line {lines[0][0]}: bad header n={n} m={m}")
    body = [ints(*item) for item in lines[1:]]
    if len(body) != m:
        raise GraphFormatError(f"header declares m={m} edges but {len(body)} were given")
    try:
        return Graph(n, body)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def to_edgelist(g: Graph) -> str:
    rows = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(rows) + "\n"


def _pairs(n):
    # graph6 bit order: column-wise over the upper triangle
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    data = []
    for pos, ch in enumerate(s):
        b = ord(ch)
        if not 63 <= b <= 126:
            raise GraphFormatError(f"byte {b!r} at position {pos} outside graph6 range 63..126")
        data.append(b - 63)

    if data[0] != 63:
        n, rest = data[0], data[1:]
    elif len(data) >= 2 and data[1] == 63:
        raise GraphFormatError(f"graph6 graphs with more than {_LONG_N_MAX} vertices are not supported")
    else:
        if len(data) < 4:
            raise GraphFormatError("truncated graph6 size header")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        rest = data[4:]
    if n < 1:
        raise GraphFormatError("graph6 string encodes an empty graph; n >= 1 required")

    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(rest) < need:
        raise GraphFormatError(f"truncated graph6 bit stream: need {need} bytes for n={n}, got {len(rest)}")
    if len(rest) > need:
        raise GraphFormatError(f"trailing data after graph6 bit stream ({len(rest) - need} extra bytes)")

    edges = []
    for k, (i, j) in enumerate(_pairs(n)):
        if (rest[k // 6] >> (5 - k % 6)) & 1:
            edges.append((i, j))
    return Graph(n, edges)


def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= _SHORT_N_MAX:
        out = [n]
    elif n <= _LONG_N_MAX:
        out = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        raise ValueError(f"n={n} exceeds the supported graph6 size")
    bits = [1 if (i, j) in g.edges else 0 for i, j in _pairs(n)]
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        word = 0
        for b in bits[k:k + 6]:
            word = (word << 1) | b
        out.append(word)
    return "".join(chr(x + 63) for x in out)
