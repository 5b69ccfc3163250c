"""Arithmetic functions as vectors: norms, Dirichlet convolution, and certified Dirichlet series."""
from ._errors import (
    ArithSpaceError,
    BoundViolationError,
    CapacityError,
    DivergenceError,
    DomainError,
    LengthMismatchError,
    RegionError,
)
from .characters import CharacterTable, character, character_group
from .functions import Kind, build_classical, classical_growth_bound, sieve_spf
from .norms import (
    NormKind,
    NormReport,
    hilbert_component,
    hilbert_sup,
    log_average_component,
    truncation_error,
    u_norm_hybrid,
    u_norm_log,
)
from .operators import (
    cesaro,
    convolution_constant_scan,
    convolve,
    mobius_invert,
    operator_norm_estimate,
    pointwise_mul,
    shift,
    shift_constant,
)
from .series import (
    SeriesEvaluation,
    evaluate_dirichlet,
    inv_zeta,
    l_function,
    majorant_sum,
    mertens_scan,
    neg_zeta_log_deriv,
    partial_sums,
    psi_scan,
    twisted_series_check,
    verify_product,
    zeta,
)
from .tables import FunctionTable, GrowthBound, ValueKind

__version__ = "0.1.0"
