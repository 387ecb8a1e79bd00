"""Walk through building an MDS convolutional code over Z_4.

Run with ``python3 demos/lifting_walkthrough.py``. The cells are marked with
``# %%`` so editors that understand them can step through one at a time.
"""

# %% The bound for a small shape
from zprconv import CodeShape, conv_generalized_singleton, derive_plan

shape = CodeShape(n=3, k=2, delta=2, p=2, r=2)
print("generalized Singleton bound:", conv_generalized_singleton(shape))

# %% The plan fixes the base code over Z_2
# The last block of rows has degree nu; its ell rows are split by an
# r-optimal profile, and the remaining rows sit one degree higher.
plan = derive_plan(shape)
print(f"nu={plan.nu} ell={plan.ell} profile={plan.ell_profile}")
print(f"base code: k={plan.k_base} delta={plan.delta_base} degrees={plan.base_row_degrees}")

# %% Find a base MDS code over the field
from zprconv import search_base_mds

base = search_base_mds(shape.n, plan.k_base, plan.delta_base, shape.p, plan.base_row_degrees)
print("base rows:", [str(v) for v in base.rows], "distance", base.claimed_distance)

# %% Lift it and check the p-basis properties
from zprconv import lift_encoder, verify_lift

enc = lift_encoder(base, plan)
for v in enc.rows:
    print("  ", v)
print(" ".join(verify_lift(enc, plan).lines()))

# %% The lifted code keeps the base distance
from zprconv import conv_free_distance

report = conv_free_distance(enc, exhaustive=True)
print("free distance:", report.value, "witness:", report.witness)

# %% Where lifting from Z_2 runs out
# For (n, k, delta) = (2, 4, 4) the base code would need k=2, n=2 over Z_2
# with distance 3. Such a code contains det(G)(D) times (1, 0), and over Z_2
# every nonzero det of degree <= 2 has a multiple of weight <= 2, since
# (1 + D)(1 + D + D^2) = 1 + D^3. The search reports this honestly.
from zprconv import SearchExhausted, build_mds

try:
    build_mds(CodeShape(2, 4, 4, 2, 2))
except SearchExhausted as exc:
    print("expected:", exc)
