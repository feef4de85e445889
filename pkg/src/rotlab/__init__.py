"""Exact rotation numbers of piecewise-linear circle homeomorphisms."""

from .arith import (
    ContinuedFraction,
    MoebiusTransform,
    QuadraticIrrational,
    backsubstitute,
    cf_value,
    continued_fraction,
    make_quadratic,
    period_matrix,
    rational_cf,
    solve_periodic,
)
from .plmap import (
    PLCircleMap,
    PLIntervalMap,
    family_boshernitzan,
    family_fq,
    family_fqr,
    identity_map,
    make_circle_map,
    make_interval_map,
    map_from_json,
    rescale_from_interval,
    rotation,
)
from .renorm import (
    DEFAULT_BIT_BUDGET,
    RenormTrace,
    ReturnData,
    RotationNumber,
    final_period,
    first_return,
    renorm_trace,
    renormalize,
    return_time_zero,
    rotation_number_estimate,
    rotation_number_exact,
)
from .obstruction import gamma_map, is_f_obstruction, obstruction_input
from .scan import enumerate_fractions, scan

__version__ = "0.1.0"
