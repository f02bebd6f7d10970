"""graph6 encoding and decoding (bit-exact, n <= 64)."""

from __future__ import annotations

from .graph import MAX_VERTICES, Graph

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    """Base class for graph6 decoding failures."""


class Graph6HeaderError(Graph6Error):
    """The size prefix is missing, malformed, or uses an illegal character."""


class Graph6RangeError(Graph6Error):
    """The encoded vertex count is outside the supported range."""


class Graph6BodyError(Graph6Error):
    """The adjacency body is truncated, has illegal characters, or non-zero padding."""


class Graph6TrailingDataError(Graph6Error):
    """Characters remain after the adjacency body."""


def _body_length(n: int) -> int:
    return (n * (n - 1) // 2 + 5) // 6


def _encode_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0))


def _decode_size(text: str) -> tuple[int, int]:
    """Return (n, number of characters consumed)."""
    if not text:
        raise Graph6HeaderError("empty graph6 string")
    first = ord(text[0])
    if not 63 <= first <= 126:
        raise Graph6HeaderError(f"illegal size character {text[0]!r}")
    if first < 126:
        return first - 63, 1
    if len(text) >= 2 and text[1] == "~":
        # 8-byte form encodes n >= 258048; always out of range here
        if len(text) < 8 or any(not 63 <= ord(c) <= 126 for c in text[2:8]):
            raise Graph6HeaderError("truncated 8-byte size prefix")
        n = 0
        for c in text[2:8]:
            n = (n << 6) | (ord(c) - 63)
        raise Graph6RangeError(f"graph has {n} vertices; at most {MAX_VERTICES} supported")
    if len(text) < 4:
        raise Graph6HeaderError("truncated 4-byte size prefix")
    n = 0
    for c in text[1:4]:
        code = ord(c)
        if not 63 <= code <= 126:
            raise Graph6HeaderError(f"illegal size character {c!r}")
        n = (n << 6) | (code - 63)
    return n, 4


def parse_graph6(text: str) -> Graph:
    """Decode a graph6 string. An optional ``>>graph6<<`` header and a trailing newline are accepted."""
    if text.startswith(HEADER):
        text = text[len(HEADER):]
    if text.endswith("\n"):
        text = text[:-1]
    n, pos = _decode_size(text)
    if n > MAX_VERTICES:
        raise Graph6RangeError(f"graph has {n} vertices; at most {MAX_VERTICES} supported")
    need = _body_length(n)
    body = text[pos:pos + need]
    if len(body) < need:
        raise Graph6BodyError(f"body has {len(body)} characters, expected {need}")
    if len(text) > pos + need:
        raise Graph6TrailingDataError(f"{len(text) - pos - need} unexpected trailing characters")

    bits = 0
    for c in body:
        code = ord(c)
        if not 63 <= code <= 126:
            raise Graph6BodyError(f"illegal body character {c!r}")
        bits = (bits << 6) | (code - 63)
    total = n * (n - 1) // 2
    pad = need * 6 - total
    if bits & ((1 << pad) - 1):
        raise Graph6BodyError("non-zero padding bits")
    bits >>= pad

    rows = [0] * n
    k = total - 1
    for j in range(1, n):
        for i in range(j):
            if bits >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(rows))


def emit_graph6(g: Graph) -> str:
    n = g.n
    bits = 0
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            bits = (bits << 1) | (row >> i & 1)
    need = _body_length(n)
    bits <<= need * 6 - n * (n - 1) // 2
    chars = [chr(((bits >> (6 * (need - 1 - t))) & 63) + 63) for t in range(need)]
    return _encode_size(n) + "".join(chars)
