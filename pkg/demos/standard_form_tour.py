"""p-bases and the p-standard form of a block code over Z_8.

Run with ``python3 demos/standard_form_tour.py``.
"""

# %% A block code from two generators
from zprconv import PolyVector, RingContext, block_free_distance, p_basis_from_generators, p_standard_form

Z8 = RingContext(2, 3)
gens = [PolyVector.constant(Z8, (1, 2, 4, 0)), PolyVector.constant(Z8, (0, 2, 6, 4))]
basis = p_basis_from_generators(gens)
print("p-basis with", basis.k, "rows:")
for v in basis.rows:
    print("  ", v.coefficient(0))

# %% Standard form and its parameters
form = p_standard_form(gens)
print("profile k_0..k_{r-1}:", form.profile, "column permutation:", form.permutation)
for v in form.encoder.rows:
    print("  ", v.coefficient(0))

# %% Distance against the block Singleton bound
from zprconv import block_singleton_from_params

d = block_free_distance(form.encoder).value
print("distance", d, "<= bound", block_singleton_from_params(4, form.profile))

# %% r-optimal parameters
from zprconv import all_r_optimal_params, r_optimal_params

print("canonical 6-optimal profile of 25:", r_optimal_params(25, 6))
for prof in sorted(all_r_optimal_params(25, 6), key=lambda q: q.counts, reverse=True):
    print("  ", prof)
