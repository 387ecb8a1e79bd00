"""The PCODE text format for polynomial encoders.

    pcode 1
    ring p=2 r=2
    size n=2 k=2
    row 1,1 ; 1,1
    row 2,2 ; 2,2

Each row lists n entries separated by ';', each entry being its coefficients
ascending in D, comma separated, with "0" for the zero polynomial. Text after
'#' is a comment.
"""

from __future__ import annotations

import re

from .pbasis import PEncoder
from .ring import PolyMatrix, PolyVector, RingContext

VERSION = 1
_TOKEN = re.compile(r"[^\s;,]+|[;,]")


class PCodeError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


def _tokens(text: str):
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(text)]


def _int(tok: str, line: int, col: int) -> int:
    if not re.fullmatch(r"\d+", tok):
        raise PCodeError(f"expected a non-negative integer, got {tok!r}", line, col)
    return int(tok)


def _keyvals(tokens, keys, line):
    """Parse tokens like p=2 r=2 in the given key order."""
    if len(tokens) != len(keys):
        want = " ".join(f"{k}=<int>" for k in keys)
        col = tokens[0][1] if tokens else None
        raise PCodeError(f"expected {want}", line, col)
    out = {}
    for (tok, col), key in zip(tokens, keys):
        name, eq, value = tok.partition("=")
        if name != key or not eq:
            raise PCodeError(f"expected {key}=<int>, got {tok!r}", line, col)
        out[key] = _int(value, line, col + len(name) + 1)
    return out


def parse_pcode(text: str) -> PEncoder:
    lines = []
    for number, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0].rstrip("\r")
        if body.strip():
            lines.append((number, body))
    if len(lines) < 3:
        raise PCodeError("missing header (pcode, ring and size lines)", lines[-1][0] if lines else 1)

    number, body = lines[0]
    toks = _tokens(body)
    if len(toks) != 2 or toks[0][0] != "pcode":
        raise PCodeError("first line must be 'pcode <version>'", number, 1)
    if _int(toks[1][0], number, toks[1][1]) != VERSION:
        raise PCodeError(f"unsupported version {toks[1][0]}", number, toks[1][1])

    number, body = lines[1]
    toks = _tokens(body)
    if not toks or toks[0][0] != "ring":
        raise PCodeError("expected 'ring p=<int> r=<int>'", number, 1)
    ring = _keyvals(toks[1:], ("p", "r"), number)
    try:
        ctx = RingContext(ring["p"], ring["r"])
    except ValueError as exc:
        raise PCodeError(str(exc), number, toks[1][1]) from None

    number, body = lines[2]
    toks = _tokens(body)
    if not toks or toks[0][0] != "size":
        raise PCodeError("expected 'size n=<int> k=<int>'", number, 1)
    size = _keyvals(toks[1:], ("n", "k"), number)
    n, k = size["n"], size["k"]
    if n < 1:
        raise PCodeError("n must be >= 1", number, toks[1][1])

    rows = []
    m = ctx.modulus
    for number, body in lines[3:]:
        toks = _tokens(body)
        if toks[0][0] != "row":
            raise PCodeError(f"expected 'row', got {toks[0][0]!r}", number, toks[0][1])
        entries: list[list[int]] = [[]]
        expect_value = True
        for tok, col in toks[1:]:
            if tok in ";,":
                if expect_value:
                    raise PCodeError(f"missing coefficient before {tok!r}", number, col)
                if tok == ";":
                    entries.append([])
                expect_value = True
                continue
            if not expect_value:
                raise PCodeError(f"missing separator before {tok!r}", number, col)
            value = _int(tok, number, col)
            if value >= m:
                raise PCodeError(f"coefficient {tok} out of range [0, {m})", number, col)
            entries[-1].append(value)
            expect_value = False
        if expect_value:
            raise PCodeError("row ends with a separator or is empty", number, len(body))
        if len(entries) != n:
            raise PCodeError(f"row has {len(entries)} entries, expected n={n}", number, toks[0][1])
        rows.append(PolyVector.from_entries(ctx, entries))
    if len(rows) != k:
        raise PCodeError(f"found {len(rows)} rows, header says k={k}", lines[-1][0])
    return PEncoder(PolyMatrix(ctx, n, tuple(rows)))


def emit_pcode(enc) -> str:
    G = enc.matrix if isinstance(enc, PEncoder) else enc
    ctx = G.context
    out = [f"pcode {VERSION}", f"ring p={ctx.p} r={ctx.r}", f"size n={G.n} k={G.k}"]
    for v in G.rows:
        parts = [",".join(str(x) for x in e) if e else "0" for e in v.entries]
        out.append("row " + " ; ".join(parts))
    return "\n".join(out) + "\n"


def read_pcode(path) -> PEncoder:
    with open(path, encoding="utf-8") as fh:
        return parse_pcode(fh.read())


def write_pcode(path, enc) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(emit_pcode(enc))
