"""Arithmetic in Z_{p^r} and in polynomial vectors over Z_{p^r}[D].

Polynomial vectors are stored as a tuple of constant coefficient vectors
``coeffs[t]`` (the coefficient of ``D**t``), with trailing zero vectors
trimmed so that equality and degree are canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_MODULUS = 2**31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class RingContext:
    """The ring Z_{p^r} for a prime p."""

    p: int
    r: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.r < 1:
            raise ValueError(f"r must be >= 1, got {self.r}")
        if self.p**self.r > MAX_MODULUS:
            raise ValueError(f"modulus {self.p}^{self.r} exceeds 2^31")

    @property
    def modulus(self) -> int:
        return self.p**self.r

    def valuation(self, x: int) -> int:
        """Largest i <= r with p^i dividing x (r for zero)."""
        x %= self.modulus
        if x == 0:
            return self.r
        v = 0
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def unit_inverse(self, x: int) -> int:
        return pow(x % self.modulus, -1, self.modulus)

    def is_digit(self, x: int) -> bool:
        return 0 <= x < self.p

    def __str__(self):
        return f"Z_{self.modulus}"


@dataclass(frozen=True)
class RingScalar:
    value: int
    context: RingContext

    def __post_init__(self):
        if not 0 <= self.value < self.context.modulus:
            raise ValueError(f"{self.value} is not a residue of {self.context}")

    def digits(self) -> tuple[int, ...]:
        return padic_expand(self)

    def order(self) -> int:
        return scalar_order(self)


def padic_expand(x: RingScalar) -> tuple[int, ...]:
    """Digits d_0..d_{r-1} in {0..p-1} with x = sum d_i p^i."""
    p, value = x.context.p, x.value
    out = []
    for _ in range(x.context.r):
        value, d = divmod(value, p)
        out.append(d)
    return tuple(out)


def padic_compose(digits: Sequence[int], ctx: RingContext) -> RingScalar:
    if len(digits) != ctx.r or not all(ctx.is_digit(d) for d in digits):
        raise ValueError("expected r digits in {0..p-1}")
    return RingScalar(sum(d * ctx.p**i for i, d in enumerate(digits)), ctx)


def scalar_order(x: RingScalar) -> int:
    """The j in 1..r with p^j x = 0 and p^(j-1) x != 0."""
    if x.value == 0:
        raise ValueError("order undefined for zero")
    return x.context.r - x.context.valuation(x.value)


def _trim(coeffs: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    out = [tuple(c) for c in coeffs]
    while out and not any(out[-1]):
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class PolyVector:
    """A length-n vector over Z_{p^r}[D]."""

    context: RingContext
    n: int
    coeffs: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        m = self.context.modulus
        for c in self.coeffs:
            if len(c) != self.n:
                raise ValueError(f"coefficient vector {c} does not have length {self.n}")
            if any(not 0 <= x < m for x in c):
                raise ValueError(f"coefficient vector {c} has entries outside [0, {m})")
        if self.coeffs and not any(self.coeffs[-1]):
            raise ValueError("trailing zero coefficient vectors must be trimmed")

    # construction -------------------------------------------------------
    @classmethod
    def from_coeffs(cls, ctx: RingContext, n: int, coeffs) -> "PolyVector":
        m = ctx.modulus
        return cls(ctx, n, _trim([x % m for x in c] for c in coeffs))

    @classmethod
    def from_entries(cls, ctx: RingContext, entries: Sequence[Sequence[int]]) -> "PolyVector":
        """Build from per-position polynomials, each ascending in D."""
        n = len(entries)
        length = max((len(e) for e in entries), default=0)
        coeffs = [[(e[t] if t < len(e) else 0) for e in entries] for t in range(length)]
        return cls.from_coeffs(ctx, n, coeffs)

    @classmethod
    def constant(cls, ctx: RingContext, values: Sequence[int]) -> "PolyVector":
        return cls.from_coeffs(ctx, len(values), [values])

    @classmethod
    def zero(cls, ctx: RingContext, n: int) -> "PolyVector":
        return cls(ctx, n, ())

    # views --------------------------------------------------------------
    @property
    def entries(self) -> tuple[tuple[int, ...], ...]:
        """Per-position polynomials, ascending in D, trailing zeros trimmed."""
        out = []
        for i in range(self.n):
            poly = [c[i] for c in self.coeffs]
            while poly and poly[-1] == 0:
                poly.pop()
            out.append(tuple(poly))
        return tuple(out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def coefficient(self, t: int) -> tuple[int, ...]:
        if 0 <= t < len(self.coeffs):
            return self.coeffs[t]
        return (0,) * self.n

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "PolyVector"):
        if other.context != self.context or other.n != self.n:
            raise ValueError("vectors live in different modules")

    def __add__(self, other: "PolyVector") -> "PolyVector":
        self._check(other)
        m = self.context.modulus
        length = max(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs, other.coeffs
        zero = (0,) * self.n
        return PolyVector(
            self.context,
            self.n,
            _trim(
                [(x + y) % m for x, y in zip(a[t] if t < len(a) else zero, b[t] if t < len(b) else zero)]
                for t in range(length)
            ),
        )

    def __neg__(self) -> "PolyVector":
        return self.scale(-1)

    def __sub__(self, other: "PolyVector") -> "PolyVector":
        return self + (-other)

    def scale(self, c: int) -> "PolyVector":
        m = self.context.modulus
        return PolyVector(self.context, self.n, _trim([(c * x) % m for x in v] for v in self.coeffs))

    def shift(self, t: int) -> "PolyVector":
        """Multiply by D**t."""
        if t < 0:
            raise ValueError("negative shift")
        if not self.coeffs:
            return self
        return PolyVector(self.context, self.n, ((0,) * self.n,) * t + self.coeffs)

    def mul_poly(self, poly: Sequence[int]) -> "PolyVector":
        """Multiply by the scalar polynomial sum poly[t] D^t."""
        m = self.context.modulus
        if not self.coeffs or not any(poly):
            return PolyVector.zero(self.context, self.n)
        out = [[0] * self.n for _ in range(len(self.coeffs) + len(poly) - 1)]
        for s, a in enumerate(poly):
            if a % m == 0:
                continue
            for t, v in enumerate(self.coeffs):
                row = out[s + t]
                for i, x in enumerate(v):
                    row[i] += a * x
        return PolyVector(self.context, self.n, _trim([x % m for x in row] for row in out))

    def __mul__(self, c: int) -> "PolyVector":
        return self.scale(c)

    __rmul__ = __mul__

    def __str__(self):
        return "(" + ", ".join(format_poly(e) for e in self.entries) + ")"


def format_poly(coeffs: Sequence[int]) -> str:
    terms = []
    for t, c in enumerate(coeffs):
        if c == 0:
            continue
        if t == 0:
            terms.append(str(c))
        else:
            mono = "D" if t == 1 else f"D^{t}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) or "0"


@dataclass(frozen=True)
class PolyMatrix:
    """k stacked PolyVectors of common length n."""

    context: RingContext
    n: int
    rows: tuple[PolyVector, ...] = ()

    def __post_init__(self):
        for v in self.rows:
            if v.context != self.context or v.n != self.n:
                raise ValueError("rows must share the ring and the length n")

    @classmethod
    def from_rows(cls, rows: Sequence[PolyVector], ctx: RingContext | None = None, n: int | None = None):
        rows = tuple(rows)
        if rows:
            ctx = ctx or rows[0].context
            n = rows[0].n if n is None else n
        if ctx is None or n is None:
            raise ValueError("empty matrix needs an explicit ring and length")
        return cls(ctx, n, rows)

    @classmethod
    def from_entries(cls, ctx: RingContext, rows: Sequence[Sequence[Sequence[int]]], n: int | None = None):
        vecs = tuple(PolyVector.from_entries(ctx, r) for r in rows)
        if n is None:
            if not vecs:
                raise ValueError("empty matrix needs an explicit length")
            n = vecs[0].n
        return cls(ctx, n, vecs)

    @property
    def k(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, i):
        return self.rows[i]

    @property
    def row_degrees(self) -> tuple[int | None, ...]:
        return tuple(v.degree for v in self.rows)

    def is_constant(self) -> bool:
        return all(v.degree is None or v.degree == 0 for v in self.rows)

    def lc_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(leading_coeff(v) for v in self.rows)

    def __str__(self):
        return "[" + ", ".join(str(v) for v in self.rows) + "]"


def degree(v: PolyVector) -> int | None:
    """Degree of v, or None for the zero vector."""
    return v.degree


def leading_coeff(v: PolyVector) -> tuple[int, ...]:
    if v.is_zero():
        raise ValueError("leading coefficient of the zero vector is undefined")
    return v.coeffs[-1]


def weight(v: PolyVector) -> int:
    """Hamming weight summed over all D-coefficients."""
    return sum(1 for c in v.coeffs for x in c if x)


def encode(u: PolyVector, G: PolyMatrix) -> PolyVector:
    """u(D) G(D) for a digit input u over A_p[D]."""
    if u.n != G.k:
        raise ValueError(f"input length {u.n} does not match {G.k} rows")
    ctx = G.context
    if any(not ctx.is_digit(x) for c in u.coeffs for x in c):
        raise ValueError("input not a digit vector")
    out = PolyVector.zero(ctx, G.n)
    for poly, row in zip(u.entries, G.rows):
        if poly:
            out = out + row.mul_poly(poly)
    return out


def poly_trim(a: Sequence[int]) -> tuple[int, ...]:
    out = list(a)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_add(a: Sequence[int], b: Sequence[int], modulus: int) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % modulus
    return poly_trim(out)


def poly_mul(a: Sequence[int], b: Sequence[int], modulus: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim([x % modulus for x in out])
