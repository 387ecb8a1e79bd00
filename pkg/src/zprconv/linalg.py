"""Linear algebra on constant vectors over the chain ring Z_{p^r}.

Everything here works with plain tuples of ints. The central object is the
Howell form: an echelon form whose rows also generate every element of the
row span that vanishes on a prefix of columns. With it, membership and
solving reduce to a single left-to-right sweep.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .ring import RingContext

Vector = tuple[int, ...]


@dataclass(frozen=True)
class HowellRow:
    col: int
    val: int  # pivot entry is p**val
    row: Vector


def howell_form(rows: Sequence[Sequence[int]], ctx: RingContext, ncols: int | None = None) -> list[HowellRow]:
    """Canonical Howell form of the Z_{p^r}-span of ``rows``.

    Pivots are taken left to right; in each column the entry of minimal
    p-adic valuation is used (lowest row index on ties) and scaled to p^v.
    Entries above a pivot are reduced into [0, p^v).
    """
    m, p, r = ctx.modulus, ctx.p, ctx.r
    work = [[x % m for x in row] for row in rows]
    work = [row for row in work if any(row)]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    out: list[list] = []  # [col, val, row]
    for col in range(ncols):
        best = None
        for idx, row in enumerate(work):
            if row[col]:
                v = ctx.valuation(row[col])
                if best is None or v < best[0]:
                    best = (v, idx)
        if best is None:
            continue
        v, idx = best
        piv = work.pop(idx)
        pv = p**v
        inv = ctx.unit_inverse(piv[col] // pv)
        piv = [(inv * x) % m for x in piv]
        rest = []
        for row in work:
            x = row[col]
            if x:
                q = x // pv
                row = [(a - q * b) % m for a, b in zip(row, piv)]
            if any(row):
                rest.append(row)
        for h in out:
            x = h[2][col]
            if x >= pv:
                q = x // pv
                h[2] = [(a - q * b) % m for a, b in zip(h[2], piv)]
        extra = [(p ** (r - v) * x) % m for x in piv]
        if any(extra):
            rest.append(extra)
        work = rest
        out.append([col, v, piv])
    return [HowellRow(c, v, tuple(row)) for c, v, row in out]


def log_size(form: Sequence[HowellRow], ctx: RingContext) -> int:
    """log_p of the number of elements in the span."""
    return sum(ctx.r - h.val for h in form)


def reduce(form: Sequence[HowellRow], target: Sequence[int], ctx: RingContext):
    """Return (quotients, remainder) of target against a Howell form.

    The remainder is the zero vector exactly when target lies in the span.
    """
    m, p = ctx.modulus, ctx.p
    t = [x % m for x in target]
    quotients = []
    for h in form:
        pv = p**h.val
        q = t[h.col] // pv
        if q:
            t = [(a - q * b) % m for a, b in zip(t, h.row)]
        quotients.append(q)
    return quotients, tuple(t)


def contains(form: Sequence[HowellRow], target: Sequence[int], ctx: RingContext) -> bool:
    return not any(reduce(form, target, ctx)[1])


class Solver:
    """Solve sum_j s_j rows[j] = target over Z_{p^r}, and list syzygies.

    Uses the Howell form of the augmented matrix [rows | I].
    """

    def __init__(self, rows: Sequence[Sequence[int]], ctx: RingContext, n: int):
        self.ctx = ctx
        self.n = n
        self.m = len(rows)
        aug = [list(row) + [1 if i == j else 0 for j in range(self.m)] for i, row in enumerate(rows)]
        form = howell_form(aug, ctx, n + self.m)
        self.image = [h for h in form if h.col < n]
        self.kernel = [h.row[n:] for h in form if h.col >= n]

    def solve(self, target: Sequence[int]) -> list[int] | None:
        ctx, n = self.ctx, self.n
        mod, p = ctx.modulus, ctx.p
        t = [x % mod for x in target]
        comb = [0] * self.m
        for h in self.image:
            x = t[h.col]
            pv = p**h.val
            if x % pv:
                return None
            q = x // pv
            if q:
                t = [(a - q * b) % mod for a, b in zip(t, h.row[:n])]
                comb = [(c + q * b) % mod for c, b in zip(comb, h.row[n:])]
        if any(t):
            return None
        return comb


def mod_p_kernel(rows: Sequence[Sequence[int]], ctx: RingContext) -> list[Vector]:
    """A basis of {a in Z_p^m : sum a_j rows[j] = 0 mod p}."""
    field = RingContext(ctx.p, 1)
    n = len(rows[0]) if rows else 0
    return list(Solver([[x % ctx.p for x in row] for row in rows], field, n).kernel)


def digit_relations(rows: Sequence[Sequence[int]], ctx: RingContext, limit: int = 2**20):
    """Yield nonzero digit vectors a with sum a_j rows[j] = 0 in Z_{p^r}.

    A digit relation reduces mod p to a Z_p-kernel vector, and the digit
    vector is determined by its reduction, so enumerating the mod-p kernel
    is exhaustive.
    """
    import itertools

    p, mod = ctx.p, ctx.modulus
    basis = mod_p_kernel(rows, ctx)
    if p ** len(basis) > limit:
        raise OverflowError(f"mod-p kernel of dimension {len(basis)} too large to enumerate")
    n = len(rows[0]) if rows else 0
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        if not any(coeffs):
            continue
        a = [sum(c * b[j] for c, b in zip(coeffs, basis)) % p for j in range(len(rows))]
        total = [sum(a[j] * rows[j][i] for j in range(len(rows))) % mod for i in range(n)]
        if not any(total):
            yield tuple(a)


def is_p_independent_constant(rows: Sequence[Sequence[int]], ctx: RingContext) -> bool:
    """p-linear independence of constant vectors (digit coefficients)."""
    if not rows:
        return True
    for _ in digit_relations(rows, ctx):
        return False
    return True


class ConstantPSequence:
    """A p-generator sequence of constant vectors with digit solving.

    ``expansion(i)`` gives digits t_j (j > i) with p*c_i = sum t_j c_j.
    """

    def __init__(self, vectors: Sequence[Sequence[int]], ctx: RingContext):
        self.ctx = ctx
        self.vectors = [tuple(x % ctx.modulus for x in v) for v in vectors]
        self.n = len(self.vectors[0]) if self.vectors else 0
        self._expansions: dict[int, list[int] | None] = {}
        self._solvers: dict[int, Solver] = {}

    def _solver(self, start: int) -> Solver:
        if start not in self._solvers:
            self._solvers[start] = Solver(self.vectors[start:], self.ctx, self.n)
        return self._solvers[start]

    def expansion(self, i: int) -> list[int] | None:
        if i not in self._expansions:
            p = self.ctx.p
            target = [p * x for x in self.vectors[i]]
            self._expansions[i] = self.digits_for(target, i + 1)
        return self._expansions[i]

    def digits_for(self, target: Sequence[int], start: int = 0) -> list[int] | None:
        """Digits a_j (j >= start) with sum a_j c_j = target, or None."""
        k = len(self.vectors)
        if start >= k:
            return [] if not any(x % self.ctx.modulus for x in target) else None
        coeffs = self._solver(start).solve(target)
        if coeffs is None:
            return None
        return self.normalize(coeffs, start)

    def normalize(self, coeffs: Sequence[int], start: int = 0) -> list[int] | None:
        """Turn ring coefficients on c_start.. into digit coefficients."""
        p, mod = self.ctx.p, self.ctx.modulus
        b = [x % mod for x in coeffs]
        out = []
        for pos in range(len(b)):
            i = start + pos
            digit, carry = b[pos] % p, b[pos] // p
            out.append(digit)
            if carry:
                exp = self.expansion(i)
                if exp is None:
                    return None
                for off, t in enumerate(exp):
                    b[pos + 1 + off] = (b[pos + 1 + off] + carry * t) % mod
        return out
