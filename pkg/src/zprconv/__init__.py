"""p-bases, Singleton-type bounds and MDS lifting for convolutional codes over Z_{p^r}."""

from .bounds import (
    CodeShape,
    all_r_optimal_params,
    block_singleton_from_params,
    block_singleton_from_pdim,
    conv_generalized_singleton,
    conv_row_bound,
    field_mds_distance,
    r_optimal_params,
)
from .construct import (
    BaseEncoder,
    ConstructionPlan,
    LiftError,
    LiftReport,
    SearchExhausted,
    build_mds,
    derive_plan,
    import_base_encoder,
    lift_encoder,
    search_base_mds,
    verify_lift,
)
from .distance import (
    DistanceReport,
    block_free_distance,
    codeword_order,
    conv_free_distance,
    order_projection_check,
    order_projection_preimage,
    row_distance,
)
from .pbasis import (
    PEncoder,
    ParamProfile,
    StandardForm,
    add_later_multiple,
    can_move_row,
    expand_generators,
    is_p_generator_sequence,
    is_p_linearly_independent,
    is_reduced,
    last_block_params,
    move_row,
    p_basis_from_generators,
    p_dimension,
    p_dimension_and_degree,
    p_standard_form,
    reduce_p_basis,
    same_span,
    span_membership,
)
from .pcode import PCodeError, emit_pcode, parse_pcode, read_pcode, write_pcode
from .ring import (
    PolyMatrix,
    PolyVector,
    RingContext,
    RingScalar,
    degree,
    encode,
    leading_coeff,
    padic_compose,
    padic_expand,
    scalar_order,
    weight,
)
from .trellis import BudgetExceeded, DigitTrellis

__version__ = "0.1.0"
