import random

import pytest

from oracles import random_field_encoder
from zprconv.bounds import CodeShape, field_mds_distance
from zprconv.construct import (
    BaseEncoder,
    LiftError,
    SearchExhausted,
    build_mds,
    derive_plan,
    import_base_encoder,
    lift_encoder,
    search_base_mds,
    verify_lift,
)
from zprconv.pbasis import PEncoder, ParamProfile
from zprconv.pcode import PCodeError, emit_pcode
from zprconv.ring import PolyMatrix, PolyVector, RingContext

Z2 = RingContext(2, 1)
Z4 = RingContext(2, 2)


def base_of(rows, ctx=Z2):
    G = PolyMatrix.from_entries(ctx, rows)
    return BaseEncoder(ctx.p, G, None, "test")


def test_plan_examples():
    plan = derive_plan(CodeShape(2, 2, 2, 2, 2))
    assert (plan.nu, plan.ell, plan.ell_profile, plan.a, plan.b) == (1, 2, ParamProfile((1, 0)), 0, 0)
    assert (plan.k_base, plan.delta_base) == (1, 1)
    plan = derive_plan(CodeShape(3, 3, 4, 2, 2))
    assert (plan.nu, plan.ell, plan.ell_profile, plan.a, plan.b) == (1, 2, ParamProfile((1, 0)), 0, 1)
    assert (plan.k_base, plan.delta_base, plan.base_row_degrees) == (2, 3, (2, 1))
    plan = derive_plan(CodeShape(2, 4, 4, 2, 2))
    assert (plan.nu, plan.ell, plan.ell_profile, plan.a, plan.b) == (1, 4, ParamProfile((2, 0)), 0, 0)
    assert (plan.k_base, plan.delta_base) == (2, 2)


def test_plan_infeasible_names_inequality():
    with pytest.raises(ValueError, match="exceeds n"):
        derive_plan(CodeShape(1, 2, 1, 2, 2))


def test_plan_identities():
    for r in range(1, 4):
        for n in range(1, 6):
            for k in range(1, n * r + 1):
                for delta in range(0, 7):
                    try:
                        plan = derive_plan(CodeShape(n, k, delta, 2, r))
                    except ValueError:
                        continue
                    assert len(plan.base_row_degrees) == plan.k_base <= n
                    assert sum(plan.base_row_degrees) == plan.delta_base
                    # lifted rows: a full blocks, b rows of the split block, the ell block
                    lifted_k = plan.a * r + plan.b + plan.ell_profile.weighted
                    assert lifted_k == k
                    lifted_delta = (plan.nu + 1) * (plan.a * r + plan.b) + plan.nu * plan.ell
                    assert lifted_delta == delta


def test_search_base_examples():
    base = search_base_mds(2, 1, 1, 2)
    assert base.claimed_distance == 4 and base.verified
    assert base.rows[0] == PolyVector.from_entries(Z2, [(1, 1), (1, 1)])
    assert search_base_mds(3, 1, 1, 2).claimed_distance == 6
    assert search_base_mds(2, 1, 1, 3).claimed_distance == 4
    base = search_base_mds(2, 1, 0, 2, (0,))
    assert base.rows[0] == PolyVector.constant(Z2, (1, 1)) and base.claimed_distance == 2


def test_search_base_exhausts_honestly():
    # over Z_2 a rank-2 code of length 2 contains (det, 0) multiples, so
    # (1+D)(1+D+D^2) = 1+D^3 caps the distance at 2 < 3
    with pytest.raises(SearchExhausted, match="no MDS base found"):
        search_base_mds(2, 2, 2, 2)
    with pytest.raises(SearchExhausted):
        search_base_mds(2, 2, 2, 2, budget=5)


def test_import_base():
    text = "pcode 1\nring p=2 r=1\nsize n=2 k=1\nrow 1,1 ; 1,1\n"
    base = import_base_encoder(text)
    assert base.claimed_distance == 4 and base.verified and base.provenance == "imported"
    with pytest.raises(PCodeError, match="prime"):
        import_base_encoder("pcode 1\nring p=4 r=1\nsize n=2 k=1\nrow 1 ; 1\n")
    plan = derive_plan(CodeShape(2, 2, 2, 2, 2))
    two = "pcode 1\nring p=2 r=1\nsize n=2 k=2\nrow 1,1 ; 1,1\nrow 1 ; 0,1\n"
    with pytest.raises(ValueError, match="degree profile mismatch"):
        import_base_encoder(two, plan)
    with pytest.raises(ValueError, match="rank deficient"):
        import_base_encoder("pcode 1\nring p=2 r=1\nsize n=2 k=2\nrow 1,1 ; 1,1\nrow 1,1 ; 1,1\n")
    with pytest.raises(ValueError, match="not reduced"):
        import_base_encoder("pcode 1\nring p=2 r=1\nsize n=2 k=2\nrow 1,1 ; 0,1\nrow 0,1 ; 0,1\n")
    with pytest.raises(ValueError, match="r = 1"):
        import_base_encoder(PEncoder.from_rows([PolyVector.constant(Z4, (1, 1))]))


def test_import_base_from_path(tmp_path):
    path = tmp_path / "base.pcode"
    path.write_text("pcode 1\nring p=2 r=1\nsize n=3 k=1\nrow 1,1 ; 1,1 ; 1,1\n")
    assert import_base_encoder(str(path)).claimed_distance == 6


def test_lift_examples():
    plan = derive_plan(CodeShape(2, 2, 2, 2, 2))
    enc = lift_encoder(base_of([[(1, 1), (1, 1)]]), plan)
    assert enc.matrix == PolyMatrix.from_entries(Z4, [[(1, 1), (1, 1)], [(2, 2), (2, 2)]])
    assert verify_lift(enc, plan).passed

    plan = derive_plan(CodeShape(3, 3, 4, 2, 2))
    g1 = [(1, 0, 1), (0, 1, 1), (1, 1)]
    g0 = [(1,), (0, 1), (1, 1)]
    enc = lift_encoder(base_of([g1, g0]), plan)
    G1 = PolyVector.from_entries(Z4, g1)
    G0 = PolyVector.from_entries(Z4, g0)
    assert list(enc.rows) == [G1.scale(2), G0, G0.scale(2)]
    assert sum(enc.row_degrees) == 4

    plan = derive_plan(CodeShape(2, 4, 4, 2, 2))
    assert plan.a == plan.b == 0
    enc = lift_encoder(base_of([[(1, 1), (0, 1)], [(0, 1), (1,)]]), plan)
    assert enc.k == 4 and all(v.degree == 1 for v in enc.rows)

    with pytest.raises(LiftError, match="degree profile mismatch"):
        lift_encoder(base_of([[(1,), (1,)]]), derive_plan(CodeShape(2, 2, 2, 2, 2)))


def test_verify_lift_failures():
    plan = derive_plan(CodeShape(2, 2, 2, 2, 2))
    enc = lift_encoder(base_of([[(1, 1), (1, 1)]]), plan)
    broken = PEncoder.from_rows([enc.rows[0], PolyVector.zero(Z4, 2)], Z4, 2)
    report = verify_lift(broken, plan)
    assert not report.checks["independent"] and not report.passed
    assert "independent=fail" in report.lines()

    # rows mixed so that leading coefficients coincide
    plan = derive_plan(CodeShape(2, 4, 4, 2, 2))
    mixed = base_of([[(1, 1), (0, 1)], [(0, 1), (1, 1)]])
    enc = lift_encoder(mixed, plan)
    report = verify_lift(enc, plan)
    assert not report.checks["reduced"]


def test_lifts_of_random_bases_pass():
    rng = random.Random(41)
    shapes = [CodeShape(3, 3, 4, 2, 2), CodeShape(3, 4, 4, 3, 2), CodeShape(4, 5, 6, 2, 3), CodeShape(2, 2, 2, 3, 2)]
    for trial in range(40):
        shape = shapes[trial % len(shapes)]
        plan = derive_plan(shape)
        G = random_field_encoder(rng, shape.p, shape.n, plan.base_row_degrees)
        enc = lift_encoder(BaseEncoder(shape.p, G, None, "test"), plan)
        report = verify_lift(enc, plan)
        assert report.passed, report.lines()


def test_build_mds_small_shapes():
    enc, rep = build_mds(CodeShape(2, 2, 2, 2, 2))
    assert enc.matrix == PolyMatrix.from_entries(Z4, [[(1, 1), (1, 1)], [(2, 2), (2, 2)]])
    assert rep.value == 4 and rep.certified
    enc, rep = build_mds(CodeShape(3, 2, 2, 2, 2))
    assert rep.value == 6 and rep.certified
    assert field_mds_distance(3, 1, 1) == 6


def test_build_mds_with_unverified_base_warns():
    plan = derive_plan(CodeShape(2, 2, 2, 2, 2))
    base = BaseEncoder(2, PolyMatrix.from_entries(Z2, [[(1, 1), (0, 1)]]), None, "test")
    with pytest.warns(RuntimeWarning, match="not certified"):
        enc, rep = build_mds(plan.shape, base=base)
    assert rep.value < 4 and not rep.certified


def test_emit_of_lift_is_canonical():
    enc, _ = build_mds(CodeShape(2, 2, 2, 2, 2))
    assert emit_pcode(enc) == "pcode 1\nring p=2 r=2\nsize n=2 k=2\nrow 1,1 ; 1,1\nrow 2,2 ; 2,2\n"
