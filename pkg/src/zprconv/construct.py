"""MDS convolutional codes over Z_{p^r} lifted from MDS codes over Z_p.

A base encoder over the field Z_p with the right row degrees is either found
by search or imported, then its blocks of rows are stacked together with
their p-power multiples. The lifted code inherits the base code's free
distance, which matches the generalized Singleton bound.
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field

from .bounds import CodeShape, conv_generalized_singleton, field_mds_distance, r_optimal_params
from .distance import DistanceReport, conv_free_distance
from .linalg import is_p_independent_constant
from .pbasis import (
    PEncoder,
    ParamProfile,
    is_p_generator_sequence,
    is_p_linearly_independent,
    p_dimension,
)
from .pcode import parse_pcode
from .ring import PolyMatrix, PolyVector, RingContext, leading_coeff
from .trellis import BudgetExceeded, DigitTrellis

SEARCH_BUDGET = 2**18


class SearchExhausted(RuntimeError):
    pass


class LiftError(RuntimeError):
    pass


@dataclass(frozen=True)
class ConstructionPlan:
    shape: CodeShape
    nu: int
    ell: int
    ell_profile: ParamProfile
    a: int
    b: int
    k_base: int
    delta_base: int
    base_row_degrees: tuple[int, ...]

    @property
    def upper_rows(self) -> int:
        """Rows of the base encoder with degree nu + 1."""
        return self.a + (1 if self.b else 0)


@dataclass(frozen=True)
class BaseEncoder:
    p: int
    matrix: PolyMatrix
    claimed_distance: int | None
    provenance: str  # "searched" or "imported"
    verified: bool = False

    @property
    def rows(self):
        return self.matrix.rows


def derive_plan(shape: CodeShape) -> ConstructionPlan:
    n, k, delta, r = shape.n, shape.k, shape.delta, shape.r
    if k < 1:
        raise ValueError("construction needs k >= 1")
    nu = delta // k
    ell = k * (nu + 1) - delta
    profile = r_optimal_params(ell, r)
    a, b = divmod(k - ell, r)
    upper = a + (1 if b else 0)
    k_base = upper + profile.total
    if k_base > n:
        raise ValueError(
            f"infeasible shape: ceil(ell/r) + a + [b>0] = {profile.total} + {a} + {1 if b else 0}"
            f" = {k_base} exceeds n = {n}"
        )
    delta_base = upper * (nu + 1) + profile.total * nu
    degrees = (nu + 1,) * upper + (nu,) * profile.total
    return ConstructionPlan(shape, nu, ell, profile, a, b, k_base, delta_base, degrees)


# --------------------------------------------------------------------------
# base encoders over Z_p


def _field_distance(G: PolyMatrix, budget: int) -> int | None:
    """Exact free distance, 0 for a dependent set of rows, None if too large."""
    try:
        trellis = DigitTrellis(G, budget)
    except BudgetExceeded:
        return None
    value, _ = trellis.free_distance()
    return value


def _candidate_rows(ctx: RingContext, n: int, degree: int, digits):
    coeffs = [digits[t * n : (t + 1) * n] for t in range(degree + 1)]
    return PolyVector.from_coeffs(ctx, n, coeffs)


def search_base_mds(
    n: int,
    k: int,
    delta: int,
    p: int,
    row_degrees=None,
    seed: int = 0,
    budget: int = SEARCH_BUDGET,
) -> BaseEncoder:
    """A reduced encoder over Z_p whose free distance meets the field bound.

    The search space is every choice of coefficients with exact row degrees.
    It is walked in lexicographic order when it fits in ``budget``, and
    sampled with a seeded generator otherwise. Every accepted encoder has its
    free distance computed exactly on the trellis.
    """
    ctx = RingContext(p, 1)
    if row_degrees is None:
        nu, extra = divmod(delta, k)
        row_degrees = (nu + 1,) * extra + (nu,) * (k - extra)
    row_degrees = tuple(row_degrees)
    if len(row_degrees) != k or sum(row_degrees) != delta:
        raise ValueError("row degrees must have k entries summing to delta")
    target = field_mds_distance(n, k, delta)
    sizes = [n * (d + 1) for d in row_degrees]

    def rows_space(d, size):
        # leading coefficient vector must be nonzero
        for digits in itertools.product(range(p), repeat=size):
            if any(digits[d * n :]):
                yield digits

    def check(choice):
        rows = [_candidate_rows(ctx, n, d, c) for d, c in zip(row_degrees, choice)]
        if any(sum(1 for x in c if x) < target for c in choice):
            return None
        lcs = [leading_coeff(v) for v in rows]
        if not is_p_independent_constant(lcs, ctx):
            return None
        G = PolyMatrix(ctx, n, tuple(rows))
        dist = _field_distance(G, 2**22)
        if dist == target:
            return G
        return None

    total = 1
    for s in sizes:
        total *= p**s
    if total <= budget:
        # rows of equal degree can be taken in increasing order
        pools = [[c for c in rows_space(d, s) if sum(1 for x in c if x) >= target] for d, s in zip(row_degrees, sizes)]
        for choice in itertools.product(*pools):
            if any(
                row_degrees[i] == row_degrees[i + 1] and choice[i] >= choice[i + 1] for i in range(k - 1)
            ):
                continue
            G = check(choice)
            if G is not None:
                return BaseEncoder(p, G, target, "searched", True)
        raise SearchExhausted(f"no MDS base found: exhaustive search over {total} encoders")
    rng = random.Random(seed)
    for _ in range(budget):
        choice = []
        for d, s in zip(row_degrees, sizes):
            while True:
                c = tuple(rng.randrange(p) for _ in range(s))
                if any(c[d * n :]):
                    break
            choice.append(c)
        G = check(choice)
        if G is not None:
            return BaseEncoder(p, G, target, "searched", True)
    raise SearchExhausted(f"no MDS base found: {budget} random candidates (seed {seed})")


def import_base_encoder(source, plan: ConstructionPlan | None = None, budget: int = 2**22) -> BaseEncoder:
    """Load a base encoder over Z_p from PCODE text or a file path."""
    if isinstance(source, PEncoder):
        enc = source
    else:
        text = source
        if "\n" not in str(source):
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        enc = parse_pcode(text)
    ctx = enc.context
    if ctx.r != 1:
        raise ValueError(f"base encoder must be over Z_p (r = 1), got r = {ctx.r}")
    G = enc.matrix
    if plan is not None:
        if ctx.p != plan.shape.p or G.n != plan.shape.n:
            raise ValueError("base encoder ring or length does not match the plan")
        if tuple(v.degree for v in G.rows) != plan.base_row_degrees:
            raise ValueError(
                f"degree profile mismatch: base has {[v.degree for v in G.rows]},"
                f" plan needs {list(plan.base_row_degrees)}"
            )
    if any(v.is_zero() for v in G.rows) or not G.rows:
        raise ValueError("rank deficient: base encoder has a zero row")
    dist = _field_distance(G, budget)
    if dist == 0 or (dist is None and not is_p_linearly_independent(G.rows)):
        raise ValueError("rank deficient: rows are dependent over Z_p[D]")
    if not is_p_independent_constant([leading_coeff(v) for v in G.rows], ctx):
        raise ValueError("base encoder is not reduced: leading coefficients are dependent")
    return BaseEncoder(ctx.p, G, dist, "imported", dist is not None)


# --------------------------------------------------------------------------
# lifting


def lift_encoder(base: BaseEncoder, plan: ConstructionPlan) -> PEncoder:
    shape = plan.shape
    p, r = shape.p, shape.r
    if base.p != p or base.matrix.n != shape.n:
        raise LiftError("base encoder ring or length does not match the plan")
    if tuple(v.degree for v in base.rows) != plan.base_row_degrees:
        raise LiftError(
            f"degree profile mismatch: base has {[v.degree for v in base.rows]},"
            f" plan needs {list(plan.base_row_degrees)}"
        )
    ctx = RingContext(p, r)
    embedded = [PolyVector.from_coeffs(ctx, shape.n, v.coeffs) for v in base.rows]
    rows = []
    pos = 0
    for _ in range(plan.a):
        v = embedded[pos]
        pos += 1
        rows.extend(v.scale(p**j) for j in range(r))
    if plan.b:
        v = embedded[pos]
        pos += 1
        rows.extend(v.scale(p**j) for j in range(r - plan.b, r))
    for i, count in enumerate(plan.ell_profile):
        for _ in range(count):
            v = embedded[pos]
            pos += 1
            rows.extend(v.scale(p**j) for j in range(i, r))
    return PEncoder.from_rows(rows, ctx, shape.n)


@dataclass(frozen=True)
class LiftReport:
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def lines(self):
        return [f"{name}={'pass' if ok else 'fail'}" for name, ok in self.checks.items()]


def verify_lift(enc: PEncoder, plan: ConstructionPlan) -> LiftReport:
    rows = enc.rows
    checks = {}
    checks["generator_sequence"] = is_p_generator_sequence(rows)
    checks["independent"] = bool(rows) and not any(v.is_zero() for v in rows) and is_p_linearly_independent(rows)
    checks["reduced"] = checks["independent"] and is_p_independent_constant(
        [leading_coeff(v) for v in rows], enc.context
    )
    pdim = p_dimension(rows, enc.context, enc.n) if rows else 0
    checks["p_dimension"] = pdim == plan.shape.k and len(rows) == plan.shape.k
    degree_sum = sum(v.degree for v in rows if not v.is_zero())
    checks["p_degree"] = checks["reduced"] and degree_sum == plan.shape.delta
    return LiftReport(checks)


def build_mds(
    shape: CodeShape,
    seed: int = 0,
    budget: int = SEARCH_BUDGET,
    base: BaseEncoder | None = None,
    max_degree: int | None = None,
) -> tuple[PEncoder, DistanceReport]:
    plan = derive_plan(shape)
    if base is None:
        base = search_base_mds(shape.n, plan.k_base, plan.delta_base, shape.p, plan.base_row_degrees, seed, budget)
    enc = lift_encoder(base, plan)
    report = verify_lift(enc, plan)
    if not report.passed:
        failed = [name for name, ok in report.checks.items() if not ok]
        raise LiftError(f"lifted encoder failed checks: {', '.join(failed)}")
    enc = enc.with_flags("generator_sequence", "independent", "reduced")
    bound = conv_generalized_singleton(shape)
    # the lifted code's distance is at least the base code's exact distance
    lower = bound if base.verified and base.claimed_distance == bound else None
    dist = conv_free_distance(enc, max_degree=max_degree, lower_bound=lower)
    if not dist.certified:
        warnings.warn(f"distance {dist.value} not certified against the bound {bound}", RuntimeWarning)
    return enc, dist
