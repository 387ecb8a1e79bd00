"""p-bases of submodules of Z_{p^r}[D]^n.

The workhorse is a small standard-basis computation for the module spanned
by a set of polynomial vectors, under the ordering that compares degrees
and takes the whole coefficient vector of the top degree as leading term.
From it we read off reduced p-bases, decide membership, and turn ring
coefficients into digit (A_p[D]) coefficients.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .linalg import Solver, contains, howell_form, is_p_independent_constant
from .ring import PolyMatrix, PolyVector, RingContext, leading_coeff, poly_add, poly_mul

FLAGS = ("generator_sequence", "independent", "reduced")


@dataclass(frozen=True)
class PEncoder:
    """A matrix whose rows are meant to form a p-basis of a code.

    ``verified`` names the properties that have actually been checked.
    """

    matrix: PolyMatrix
    verified: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        unknown = set(self.verified) - set(FLAGS)
        if unknown:
            raise ValueError(f"unknown flags {sorted(unknown)}")
        object.__setattr__(self, "verified", frozenset(self.verified))

    @classmethod
    def from_rows(cls, rows, ctx: RingContext | None = None, n: int | None = None, verified=()):
        return cls(PolyMatrix.from_rows(rows, ctx, n), frozenset(verified))

    @classmethod
    def from_entries(cls, ctx: RingContext, rows, n: int | None = None, verified=()):
        return cls(PolyMatrix.from_entries(ctx, rows, n), frozenset(verified))

    @property
    def context(self) -> RingContext:
        return self.matrix.context

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def k(self) -> int:
        return self.matrix.k

    @property
    def rows(self) -> tuple[PolyVector, ...]:
        return self.matrix.rows

    @property
    def row_degrees(self):
        return self.matrix.row_degrees

    def with_flags(self, *flags) -> "PEncoder":
        return PEncoder(self.matrix, self.verified | set(flags))

    def __str__(self):
        return str(self.matrix)


@dataclass(frozen=True)
class ParamProfile:
    """Counts (c_0, ..., c_{r-1}); c_i counts generators of order r - i."""

    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if not self.counts:
            raise ValueError("a profile needs r >= 1 entries")
        if any(c < 0 for c in self.counts):
            raise ValueError("profile entries must be non-negative")

    @property
    def r(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def weighted(self) -> int:
        """sum (r - i) c_i, the p-dimension carried by the profile."""
        return sum((self.r - i) * c for i, c in enumerate(self.counts))

    def __iter__(self):
        return iter(self.counts)

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, i):
        return self.counts[i]

    def __str__(self):
        return ",".join(str(c) for c in self.counts)


def _rows_of(obj) -> tuple[PolyVector, ...]:
    if isinstance(obj, PEncoder):
        return obj.rows
    if isinstance(obj, PolyMatrix):
        return obj.rows
    return tuple(obj)


def _shape_of(rows, ctx, n):
    if rows:
        ctx = ctx or rows[0].context
        n = rows[0].n if n is None else n
        for v in rows:
            if v.context != ctx or v.n != n:
                raise ValueError("vectors must share the ring and the length n")
    return ctx, n


# --------------------------------------------------------------------------
# standard basis with cofactors


class _Element:
    """A module element together with its expression in the generators."""

    __slots__ = ("vec", "cof")

    def __init__(self, vec: PolyVector, cof: PolyVector | None):
        self.vec = vec
        self.cof = cof

    def sub(self, c: int, shift: int, other: "_Element") -> "_Element":
        vec = self.vec - other.vec.scale(c).shift(shift)
        cof = None
        if self.cof is not None:
            cof = self.cof - other.cof.scale(c).shift(shift)
        return _Element(vec, cof)

    def scale(self, c: int) -> "_Element":
        return _Element(self.vec.scale(c), None if self.cof is None else self.cof.scale(c))

    def combine(self, terms) -> "_Element":
        vec = self.vec
        cof = self.cof
        for c, shift, other in terms:
            vec = vec + other.vec.scale(c).shift(shift)
            if cof is not None:
                cof = cof + other.cof.scale(c).shift(shift)
        return _Element(vec, cof)


class _StandardBasis:
    """Rows whose leading coefficients generate every leading-coefficient
    module L_e = {lc(w) : w in M, deg w <= e} (with lower degrees shifted up).
    """

    def __init__(self, ctx: RingContext, n: int, track: int = 0):
        self.ctx = ctx
        self.n = n
        self.track = track
        self.items: list[_Element] = []
        self._levels: dict[int, tuple[int, list[int], Solver]] = {}
        self._queued: set = set()

    def element(self, vec: PolyVector, index: int | None = None) -> _Element:
        cof = None
        if self.track:
            if index is None:
                cof = PolyVector.zero(self.ctx, self.track)
            else:
                unit = [0] * self.track
                unit[index] = 1
                cof = PolyVector.constant(self.ctx, unit)
        return _Element(vec, cof)

    def _level(self, e: int):
        cached = self._levels.get(e)
        if cached is not None and cached[0] == len(self.items):
            return cached[1], cached[2]
        idx = [i for i, x in enumerate(self.items) if x.vec.degree <= e]
        solver = Solver([leading_coeff(self.items[i].vec) for i in idx], self.ctx, self.n)
        self._levels[e] = (len(self.items), idx, solver)
        return idx, solver

    def normal_form(self, el: _Element) -> _Element:
        while not el.vec.is_zero():
            e = el.vec.degree
            idx, solver = self._level(e)
            if not idx:
                break
            sol = solver.solve(leading_coeff(el.vec))
            if sol is None:
                break
            for j, c in zip(idx, sol):
                if c:
                    el = el.sub(c, e - self.items[j].vec.degree, self.items[j])
        return el

    def add(self, elements: Iterable[_Element]):
        queue = deque(elements)
        while queue:
            el = self.normal_form(queue.popleft())
            if el.vec.is_zero():
                continue
            self.items.append(el)
            queue.extend(self._syzygies())

    def _syzygies(self):
        out = []
        for e in sorted({x.vec.degree for x in self.items}):
            idx, solver = self._level(e)
            for s in solver.kernel:
                terms = [(idx[j], c) for j, c in enumerate(s) if c]
                if not terms:
                    continue
                if max(self.items[i].vec.degree for i, _ in terms) < e:
                    continue
                key = (e, tuple(terms))
                if key in self._queued:
                    continue
                self._queued.add(key)
                base = self.element(PolyVector.zero(self.ctx, self.n))
                el = base.combine((c, e - self.items[i].vec.degree, self.items[i]) for i, c in terms)
                if not el.vec.is_zero():
                    out.append(el)
        return out

    def express(self, w: PolyVector):
        """Ring-polynomial coefficients b with sum b_i g_i = w, or None."""
        el = self.normal_form(self.element(w))
        if not el.vec.is_zero():
            return None
        if el.cof is None:
            return True
        return [tuple(e) for e in (-el.cof).entries]


def _standard_basis(rows: Sequence[PolyVector], ctx, n, track=False) -> _StandardBasis:
    sb = _StandardBasis(ctx, n, len(rows) if track else 0)
    sb.add(sb.element(v, i if track else None) for i, v in enumerate(rows) if not v.is_zero())
    return sb


def _reduced_elements(sb: _StandardBasis) -> list[_Element]:
    """A reduced p-basis of the module, degree-descending."""
    ctx = sb.ctx
    p, mod = ctx.p, ctx.modulus
    seq: list[_Element] = []
    form = []
    for e in sorted({x.vec.degree for x in sb.items}):
        cands = [x for x in sb.items if x.vec.degree == e]
        for z in reversed(cands):
            while not contains(form, leading_coeff(z.vec), ctx):
                y = z
                while True:
                    pc = tuple((p * x) % mod for x in leading_coeff(y.vec))
                    if not any(pc) or contains(form, pc, ctx):
                        break
                    y = y.scale(p)
                seq.insert(0, y)
                form = howell_form([leading_coeff(x.vec) for x in seq], ctx, sb.n)
    return seq


def _reduced_rows(rows, ctx, n) -> list[PolyVector]:
    return [x.vec for x in _reduced_elements(_standard_basis(rows, ctx, n))]


# --------------------------------------------------------------------------
# digit normalisation


def _generator_expansions(rows: Sequence[PolyVector], ctx: RingContext, n: int):
    """For each i, digit polynomials t with p*v_i = sum_{j>i} t_j v_j.

    Returns None when the rows are not a p-generator sequence.
    """
    k = len(rows)
    p = ctx.p
    exps: list[dict[int, tuple[int, ...]]] = [None] * k
    sb = _StandardBasis(ctx, n, k)
    for i in reversed(range(k)):
        target = rows[i].scale(p)
        if target.is_zero():
            exps[i] = {}
        else:
            hit = next((j for j in range(i + 1, k) if rows[j] == target), None)
            if hit is not None:
                exps[i] = {hit: (1,)}
            else:
                b = sb.express(target)
                if b is None:
                    return None
                digits = _normalize(b, exps, i + 1, ctx)
                exps[i] = {j: d for j, d in enumerate(digits) if d}
        if not rows[i].is_zero():
            sb.add([sb.element(rows[i], i)])
    return exps


def _normalize(b, exps, start: int, ctx: RingContext) -> list[tuple[int, ...]]:
    """Digit coefficients equivalent to ring coefficients b on rows >= start."""
    p, mod = ctx.p, ctx.modulus
    b = [tuple(x % mod for x in poly) for poly in b]
    out = [()] * len(b)
    for i in range(start, len(b)):
        poly = b[i]
        digit = tuple(x % p for x in poly)
        carry = tuple(x // p for x in poly)
        while digit and digit[-1] == 0:
            digit = digit[:-1]
        out[i] = digit
        if any(carry):
            for j, t in exps[i].items():
                b[j] = poly_add(b[j], poly_mul(carry, t, mod), mod)
    return out


# --------------------------------------------------------------------------
# public operations


def expand_generators(gens: Sequence[PolyVector]) -> list[PolyVector]:
    """(v_1, p v_1, ..., p^(r-1) v_1, v_2, ...) with zero rows dropped."""
    out = []
    for v in gens:
        if v.is_zero():
            continue
        p, r = v.context.p, v.context.r
        for j in range(r):
            w = v.scale(p**j)
            if w.is_zero():
                break
            out.append(w)
    return out


def is_p_generator_sequence(rows) -> bool:
    rows = _rows_of(rows)
    if not rows:
        return True
    ctx, n = _shape_of(rows, None, None)
    return _generator_expansions(rows, ctx, n) is not None


def span_membership(w: PolyVector, rows) -> PolyVector | None:
    """Digit coefficients a(D) over A_p[D] with sum a_j v_j = w, or None.

    ``rows`` must be a p-generator sequence; the result is returned as a
    length-k PolyVector so that encode(a, rows) == w.
    """
    rows = _rows_of(rows)
    ctx, n = _shape_of(rows, w.context, w.n)
    if not rows:
        return PolyVector.zero(ctx, 0) if w.is_zero() else None
    exps = _generator_expansions(rows, ctx, n)
    if exps is None:
        raise ValueError("rows are not a p-generator sequence")
    sb = _standard_basis(rows, ctx, n, track=True)
    b = sb.express(w)
    if b is None:
        return None
    digits = _normalize(b, exps, 0, ctx)
    return PolyVector.from_entries(ctx, digits)


def has_digit_relation(rows) -> bool:
    """True when some nonzero digit input maps to the zero vector."""
    rows = _rows_of(rows)
    if any(v.is_zero() for v in rows):
        return True
    if not rows:
        return False
    ctx = rows[0].context
    if all(v.degree == 0 for v in rows):
        return not is_p_independent_constant([v.coefficient(0) for v in rows], ctx)
    from .trellis import DigitTrellis

    dist, _ = DigitTrellis(PolyMatrix.from_rows(rows)).free_distance()
    return dist == 0


def is_p_linearly_independent(rows) -> bool:
    rows = _rows_of(rows)
    if not rows:
        return True
    if any(v.is_zero() for v in rows):
        return False
    ctx, n = _shape_of(rows, None, None)
    if _generator_expansions(rows, ctx, n) is not None:
        # a p-generator sequence is a p-basis iff its length is the p-dimension
        return len(rows) == len(_reduced_rows(rows, ctx, n))
    return not has_digit_relation(rows)


def is_reduced(rows) -> bool:
    """p-basis whose leading-coefficient rows are p-linearly independent."""
    rows = _rows_of(rows)
    if not rows:
        return True
    if any(v.is_zero() for v in rows):
        return False
    ctx, n = _shape_of(rows, None, None)
    if not is_p_independent_constant([leading_coeff(v) for v in rows], ctx):
        return False
    return _generator_expansions(rows, ctx, n) is not None


def p_basis_from_generators(gens, ctx: RingContext | None = None, n: int | None = None) -> PEncoder:
    """A p-basis of the module spanned by ``gens``.

    Constant generators are expanded and then thinned from the last row
    backwards, dropping any row already in the span of the rows kept after
    it. Polynomial generators go through the reduced p-basis, since
    dropping rows of a polynomial expansion can lose part of the span.
    """
    gens = _rows_of(gens)
    ctx, n = _shape_of(gens, ctx, n)
    if ctx is None or n is None:
        raise ValueError("empty generator list needs an explicit ring and length")
    if all(v.degree in (None, 0) for v in gens):
        rows = expand_generators(gens)
        kept: list[PolyVector] = []
        for v in reversed(rows):
            form = howell_form([x.coefficient(0) for x in kept], ctx, n)
            if not contains(form, v.coefficient(0), ctx):
                kept.insert(0, v)
        return PEncoder.from_rows(kept, ctx, n, verified=("generator_sequence", "independent"))
    rows = _reduced_rows(gens, ctx, n)
    return PEncoder.from_rows(rows, ctx, n, verified=FLAGS)


def reduce_p_basis(enc) -> PEncoder:
    """A reduced p-basis of the module spanned by the rows of ``enc``."""
    rows = _rows_of(enc)
    ctx = enc.context if isinstance(enc, (PEncoder, PolyMatrix)) else None
    n = enc.n if isinstance(enc, (PEncoder, PolyMatrix)) else None
    ctx, n = _shape_of(rows, ctx, n)
    if isinstance(enc, PEncoder) and "reduced" in enc.verified:
        return enc
    if rows and is_reduced(rows):
        return PEncoder.from_rows(rows, ctx, n, verified=FLAGS)
    return PEncoder.from_rows(_reduced_rows(rows, ctx, n), ctx, n, verified=FLAGS)


def p_dimension(gens, ctx: RingContext | None = None, n: int | None = None) -> int:
    rows = _rows_of(gens)
    ctx, n = _shape_of(rows, ctx, n)
    if not rows:
        return 0
    return len(_reduced_rows(rows, ctx, n))


def p_dimension_and_degree(enc) -> tuple[int, int]:
    """(k, delta) of a reduced p-encoder."""
    rows = _rows_of(enc)
    flagged = isinstance(enc, PEncoder) and "reduced" in enc.verified
    if not flagged and not is_reduced(rows):
        raise ValueError("p-degree defined on reduced p-basis")
    return len(rows), sum(v.degree for v in rows)


def same_span(a, b) -> bool:
    """Two-way membership test for two p-generator sequences."""
    a, b = _rows_of(a), _rows_of(b)
    return all(span_membership(v, b) is not None for v in a) and all(
        span_membership(v, a) is not None for v in b
    )


# --------------------------------------------------------------------------
# elementary operations on p-bases


def add_later_multiple(rows, i: int, j: int, coeff: Sequence[int]) -> list[PolyVector]:
    """Replace v_i by v_i + a(D) v_j for a later row j, a(D) over Z_{p^r}."""
    rows = list(_rows_of(rows))
    if not i < j < len(rows):
        raise ValueError("only later rows may be added")
    rows[i] = rows[i] + rows[j].mul_poly(coeff)
    return rows


def can_move_row(rows, i: int, j: int) -> bool:
    """Whether v_i may be moved to position j > i (p v_i in p-span of v_j+1..)."""
    rows = _rows_of(rows)
    if not i < j < len(rows):
        return False
    v = rows[i].scale(rows[i].context.p)
    tail = rows[j + 1 :]
    if v.is_zero():
        return True
    if not tail:
        return False
    ctx, n = _shape_of(tail, None, None)
    return _standard_basis(tail, ctx, n).express(v) is not None


def move_row(rows, i: int, j: int) -> list[PolyVector]:
    """Move v_i to position j > i when the result is still a p-generator sequence."""
    if not can_move_row(rows, i, j):
        raise ValueError(f"row {i} cannot be moved to position {j}")
    rows = list(_rows_of(rows))
    v = rows.pop(i)
    rows.insert(j, v)
    return rows


# --------------------------------------------------------------------------
# p-standard form


@dataclass(frozen=True)
class StandardForm:
    encoder: PEncoder  # columns permuted
    profile: ParamProfile
    permutation: tuple[int, ...]  # column t of the form is column permutation[t] of the input
    classical: tuple[tuple[int, ...], ...]  # one row per generator, before expansion

    def unpermuted(self) -> PEncoder:
        """The same rows with the original column order restored."""
        ctx, n = self.encoder.context, self.encoder.n
        rows = []
        for v in self.encoder.rows:
            c = v.coefficient(0)
            out = [0] * n
            for t, src in enumerate(self.permutation):
                out[src] = c[t]
            rows.append(PolyVector.constant(ctx, out))
        return PEncoder.from_rows(rows, ctx, n, verified=self.encoder.verified)


def p_standard_form(enc, ctx: RingContext | None = None, n: int | None = None) -> StandardForm:
    """Bring a constant code to p-standard form.

    Rows of order r - i (type i) have pivot p^i; the returned rows are
    the layers p^(j-i) x for every type-i row x and every j >= i, with the
    blocks between the diagonal blocks cleared.
    """
    rows = _rows_of(enc)
    if isinstance(enc, (PEncoder, PolyMatrix)):
        ctx, n = enc.context, enc.n
    ctx, n = _shape_of(rows, ctx, n)
    if ctx is None or n is None:
        raise ValueError("empty encoder needs an explicit ring and length")
    if any(v.degree not in (None, 0) for v in rows):
        raise ValueError("p-standard form needs constant rows")
    p, r, mod = ctx.p, ctx.r, ctx.modulus
    work = [list(v.coefficient(0)) for v in rows if not v.is_zero()]
    perm = list(range(n))
    pivots: list[tuple[list[int], int]] = []
    t = 0
    for v in range(r):
        pv = p**v
        while True:
            found = None
            for ri, row in enumerate(work):
                for c in range(t, n):
                    if row[c] and ctx.valuation(row[c]) == v:
                        found = (ri, c)
                        break
                if found:
                    break
            if found is None:
                break
            ri, c = found
            for row in work + [pr for pr, _ in pivots]:
                row[t], row[c] = row[c], row[t]
            perm[t], perm[c] = perm[c], perm[t]
            piv = work.pop(ri)
            inv = ctx.unit_inverse(piv[t] // pv)
            piv = [(inv * x) % mod for x in piv]
            rest = []
            for row in work:
                q = row[t] // pv
                if q:
                    row = [(a - q * b) % mod for a, b in zip(row, piv)]
                if any(row):
                    rest.append(row)
            work = rest
            for pr, _ in pivots:
                q = pr[t] // pv
                if q:
                    pr[:] = [(a - q * b) % mod for a, b in zip(pr, piv)]
            pivots.append((piv, v))
            t += 1
    if work:
        raise AssertionError("standard form elimination left rows behind")
    counts = [sum(1 for _, v in pivots if v == i) for i in range(r)]

    # expanded layers; clear blocks i+1..j of each layer-j row
    layers = []
    for j in range(r):
        cleared: dict[int, list[int]] = {}  # pivot column -> cleared layer-j row
        layer = []
        for i in range(j, -1, -1):
            for col, (pr, v) in enumerate(pivots):
                if v != i:
                    continue
                row = [(p ** (j - i) * x) % mod for x in pr]
                for col2, (_, v2) in enumerate(pivots):
                    if i < v2 <= j and row[col2]:
                        q = row[col2] // p**j
                        row = [(a - q * b) % mod for a, b in zip(row, cleared[col2])]
                cleared[col] = row
                layer.append((i, col, row))
        layer.sort(key=lambda x: (x[0], x[1]))
        layers.extend(row for _, _, row in layer)
    out_rows = [PolyVector.constant(ctx, row) for row in layers]
    encoder = PEncoder.from_rows(out_rows, ctx, n, verified=("generator_sequence", "independent", "reduced"))
    return StandardForm(
        encoder,
        ParamProfile(counts),
        tuple(perm),
        tuple(tuple(pr) for pr, _ in pivots),
    )


def last_block_params(enc) -> tuple[int, int, ParamProfile]:
    """(nu, ell, profile) of the rows of minimal degree of a reduced encoder."""
    rows = _rows_of(enc)
    if not rows:
        raise ValueError("last-block parameters need a nonempty encoder")
    if any(v.is_zero() for v in rows):
        raise ValueError("encoder has a zero row")
    nu = min(v.degree for v in rows)
    block = [PolyVector.constant(v.context, leading_coeff(v)) for v in rows if v.degree == nu]
    form = p_standard_form(block)
    return nu, len(block), form.profile
