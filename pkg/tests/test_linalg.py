import random

import pytest

from oracles import closure_span
from zprconv.linalg import (
    ConstantPSequence,
    Solver,
    contains,
    digit_relations,
    howell_form,
    is_p_independent_constant,
    log_size,
)
from zprconv.ring import RingContext

RINGS = [RingContext(2, 1), RingContext(2, 2), RingContext(2, 3), RingContext(3, 2), RingContext(5, 1)]


def random_rows(rng, ctx, k, n):
    m = ctx.modulus
    return [[rng.randrange(m) if rng.random() < 0.7 else 0 for _ in range(n)] for _ in range(k)]


@pytest.mark.parametrize("ctx", RINGS, ids=str)
def test_howell_membership_and_size(ctx):
    rng = random.Random(ctx.modulus)
    m = ctx.modulus
    for _ in range(60):
        n = rng.randint(1, 3)
        rows = random_rows(rng, ctx, rng.randint(0, 3), n)
        span = closure_span(rows, ctx, n)
        form = howell_form(rows, ctx, n)
        assert ctx.p ** log_size(form, ctx) == len(span)
        for _ in range(10):
            t = tuple(rng.randrange(m) for _ in range(n))
            assert contains(form, t, ctx) == (t in span)


@pytest.mark.parametrize("ctx", RINGS, ids=str)
def test_solver_solution_and_kernel(ctx):
    rng = random.Random(7 * ctx.modulus)
    m = ctx.modulus
    for _ in range(40):
        n = rng.randint(1, 3)
        rows = random_rows(rng, ctx, rng.randint(1, 3), n)
        solver = Solver(rows, ctx, n)
        for _ in range(5):
            coeffs = [rng.randrange(m) for _ in rows]
            target = [sum(c * r[i] for c, r in zip(coeffs, rows)) % m for i in range(n)]
            sol = solver.solve(target)
            assert sol is not None
            assert [sum(c * r[i] for c, r in zip(sol, rows)) % m for i in range(n)] == target
        for s in solver.kernel:
            assert all(sum(c * r[i] for c, r in zip(s, rows)) % m == 0 for i in range(n))
        # the kernel rows span every relation
        k = len(rows)
        relations = [
            c for c in closure_span([[1 if i == j else 0 for j in range(k)] for i in range(k)], ctx, k)
            if all(sum(x * r[i] for x, r in zip(c, rows)) % m == 0 for i in range(n))
        ]
        assert len(closure_span(list(solver.kernel), ctx, k)) == len(relations)


def test_digit_relations_examples():
    Z4 = RingContext(2, 2)
    assert is_p_independent_constant([(1, 1), (2, 2)], Z4)
    assert not is_p_independent_constant([(2, 2), (2, 2)], Z4)
    assert list(digit_relations([(2, 2), (2, 2)], Z4)) == [(1, 1)]


def test_constant_p_sequence_normalizes_to_digits():
    Z8 = RingContext(2, 3)
    seq = ConstantPSequence([(1, 3), (2, 6), (4, 4)], Z8)
    digits = seq.digits_for((7, 5))
    assert digits is not None and all(d in (0, 1) for d in digits)
    total = [sum(d * v[i] for d, v in zip(digits, seq.vectors)) % 8 for i in range(2)]
    assert total == [7, 5]
    assert seq.digits_for((1, 0)) is None
