"""Minimum-weight searches over digit inputs.

Codewords of a p-encoder G(D) are u(D) G(D) with u(D) in A_p^k[D]. Row
distances and the exact free distance come from the digit trellis; when the
trellis would be too large we fall back to a depth-first search with
branch-and-bound, which only yields upper bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .pbasis import PEncoder, span_membership
from .ring import PolyMatrix, PolyVector, RingContext, encode, weight
from .trellis import DEFAULT_BUDGET, BudgetExceeded, DigitTrellis

BLOCK_BUDGET = 2**24
DFS_BUDGET = 2**20


@dataclass(frozen=True)
class DistanceReport:
    value: int
    certified: bool
    witness: PolyVector | None
    search_degree: int | None
    input: PolyVector | None = None
    row_distances: tuple[int, ...] = ()
    complete: bool = True
    note: str = ""


def _matrix(enc) -> PolyMatrix:
    if isinstance(enc, PEncoder):
        return enc.matrix
    if isinstance(enc, PolyMatrix):
        return enc
    return PolyMatrix.from_rows(enc)


def _check_nonempty(G: PolyMatrix):
    if G.k == 0 or all(v.is_zero() for v in G.rows):
        raise ValueError("the zero code has no minimum distance")


def block_free_distance(enc, budget: int = BLOCK_BUDGET) -> DistanceReport:
    """Exact minimum distance of the block code spanned over A_p by constant rows."""
    G = _matrix(enc)
    _check_nonempty(G)
    if not G.is_constant():
        raise ValueError("block distance needs constant rows")
    ctx = G.context
    p, m, k = ctx.p, ctx.modulus, G.k
    if p**k > budget:
        raise BudgetExceeded(
            f"{p}^{k} inputs exceed the budget {budget}; use conv_free_distance for an upper bound"
        )
    mat = np.array([v.coefficient(0) for v in G.rows], dtype=np.int64)
    best = None
    chunk = 1 << 16
    inputs = itertools.product(range(p), repeat=k)
    next(inputs)  # the zero input
    while True:
        block = list(itertools.islice(inputs, chunk))
        if not block:
            break
        U = np.array(block, dtype=np.int64)
        W = np.count_nonzero((U @ mat) % m, axis=1)
        i = int(np.argmin(W))
        if best is None or W[i] < best[0]:
            best = (int(W[i]), block[i])
    w, u = best
    uvec = PolyVector.constant(ctx, u)
    return DistanceReport(w, True, encode(uvec, G), 0, uvec, note="exhaustive")


def row_distance(enc, j: int, budget: int = DEFAULT_BUDGET) -> int:
    """d^r_j: least weight over nonzero inputs of degree <= j."""
    if j < 0:
        raise ValueError("j must be >= 0")
    G = _matrix(enc)
    _check_nonempty(G)
    values, _ = DigitTrellis(G, budget).row_distances(j)
    return values[j]


def default_max_degree(G: PolyMatrix) -> int:
    k = G.k
    delta = sum(v.degree or 0 for v in G.rows)
    return -(-delta // k) + 4


def conv_free_distance(
    enc,
    max_degree: int | None = None,
    lower_bound: int | None = None,
    exhaustive: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> DistanceReport:
    """Free distance search through d^r_0 >= d^r_1 >= ... >= d^r_J.

    The reported value is the least weight seen. It is certified when it
    meets ``lower_bound``, or when ``exhaustive`` is set and the trellis
    shortest-cycle search ran, which gives the exact free distance.
    """
    G = _matrix(enc)
    _check_nonempty(G)
    J = default_max_degree(G) if max_degree is None else max_degree
    if J < 0:
        raise ValueError("max_degree must be >= 0")
    try:
        trellis = DigitTrellis(G, budget)
    except BudgetExceeded as exc:
        return _dfs_free_distance(G, J, lower_bound, DFS_BUDGET, str(exc))
    values, seq = trellis.row_distances(J)
    value = values[-1]
    u = trellis.input_vector(seq)
    note = "row distances"
    certified = lower_bound is not None and value == lower_bound
    if exhaustive:
        exact, eseq = trellis.free_distance()
        if exact is not None and exact < value:
            value, u = exact, trellis.input_vector(eseq)
        certified = True
        note = "exact trellis search"
    witness = encode(u, G)
    assert weight(witness) == value
    return DistanceReport(value, certified, witness, J, u, tuple(values), True, note)


def _dfs_free_distance(G: PolyMatrix, J: int, lower_bound, node_budget: int, reason: str) -> DistanceReport:
    """Depth-first search over inputs of degree <= J with weight pruning.

    Deepens one degree at a time so that running out of budget still leaves
    a report for the last completed degree.
    """
    ctx = G.context
    p, m, k, n = ctx.p, ctx.modulus, G.k, G.n
    mem = max(v.degree or 0 for v in G.rows)
    coeffs = np.zeros((mem + 1, k, n), dtype=np.int64)
    for i, v in enumerate(G.rows):
        for t in range(len(v.coeffs)):
            coeffs[t, i] = v.coeffs[t]
    digits = np.array(list(itertools.product(range(p), repeat=k)), dtype=np.int64)
    # out[t][d] = digits[d] @ G_t
    contrib = [(digits @ coeffs[t]) % m for t in range(mem + 1)]
    best = [None, None]
    nodes = [0]

    class _Out(Exception):
        pass

    def rec(depth, limit, chosen, pending, partial):
        # pending[s] is the output coefficient at time depth + s so far
        nodes[0] += 1
        if nodes[0] > node_budget:
            raise _Out
        tail = partial + sum(int(np.count_nonzero(x % m)) for x in pending)
        if depth > 0 and (best[0] is None or tail < best[0]):
            best[0], best[1] = tail, list(chosen)
        if depth > limit:
            return
        start = 1 if depth == 0 else 0
        for d in range(start, len(digits)):
            out = [x.copy() for x in pending]
            for t in range(mem + 1):
                out[t] = (out[t] + contrib[t][d]) % m
            w = partial + int(np.count_nonzero(out[0]))
            if best[0] is not None and w >= best[0]:
                continue
            chosen.append(d)
            rec(depth + 1, limit, chosen, out[1:] + [np.zeros(n, dtype=np.int64)], w)
            chosen.pop()

    reached = None
    complete = True
    for limit in range(J + 1):
        try:
            rec(0, limit, [], [np.zeros(n, dtype=np.int64) for _ in range(mem + 1)], 0)
            reached = limit
        except _Out:
            complete = False
            break
    if best[0] is None:
        raise BudgetExceeded(f"{reason}; depth-first search found no codeword within budget")
    u = PolyVector.from_coeffs(ctx, k, [tuple(int(x) for x in digits[d]) for d in best[1]])
    witness = encode(u, G)
    value = weight(witness)
    certified = complete and lower_bound is not None and value == lower_bound
    note = "depth-first search" if complete else "depth-first search stopped at the node budget"
    return DistanceReport(value, certified, witness, reached, u, (), complete, note)


# --------------------------------------------------------------------------
# codeword order


def codeword_order(v: PolyVector) -> int:
    """The j with p^j v = 0 and p^(j-1) v != 0."""
    if v.is_zero():
        raise ValueError("order undefined for zero")
    ctx = v.context
    return ctx.r - min(ctx.valuation(x) for c in v.coeffs for x in c)


def _field_rows(base) -> tuple[RingContext, list[PolyVector]]:
    if isinstance(base, (PEncoder, PolyMatrix)):
        rows = base.rows
    elif hasattr(base, "matrix"):
        rows = base.matrix.rows
    else:
        rows = list(base)
    if not rows:
        raise ValueError("base encoder is empty")
    ctx = rows[0].context
    field_ctx = RingContext(ctx.p, 1)
    out = []
    for v in rows:
        if any(not 0 <= x < ctx.p for c in v.coeffs for x in c):
            raise ValueError("base entries must be digits")
        out.append(PolyVector.from_coeffs(field_ctx, v.n, v.coeffs))
    return field_ctx, out


def order_projection_preimage(v: PolyVector, base) -> PolyVector | None:
    """u(D) over Z_p with p^(j-1) v = p^(r-1) u(D) base(D), j = ord(v).

    Returns None when p^(j-1) v is not of that form.
    """
    ctx = v.context
    p, r = ctx.p, ctx.r
    j = codeword_order(v)
    w = v.scale(p ** (j - 1))
    top = p ** (r - 1)
    if any(x % top for c in w.coeffs for x in c):
        return None
    field_ctx, rows = _field_rows(base)
    reduced = PolyVector.from_coeffs(field_ctx, v.n, [[(x // top) % p for x in c] for c in w.coeffs])
    return span_membership(reduced, rows)


def order_projection_check(v: PolyVector, base) -> bool:
    """Whether p^(j-1) v lies in the image of p^(r-1) base(D) over A_p[D]."""
    try:
        return order_projection_preimage(v, base) is not None
    except ValueError:
        return False
