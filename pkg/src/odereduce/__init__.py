"""odereduce: scalar reduction of semilinear ODE systems, fractional matrix
powers, and fixed-step simulation with dual-path verification."""

from .linalg import (
    CharPoly,
    char_poly,
    determinant,
    exterior_trace,
    mat_mul,
    poly_eval_matrix,
    trace,
)
from .reduction import (
    ForcingSpec,
    OperatorFamily,
    ReducedEquation,
    ScalarReduction,
    StructuredForcing,
    build_operator_family,
    companion_scalar_reduce,
    derivative_chain,
    derivative_stack,
    faa_di_bruno_derivative,
    faa_di_bruno_tuples,
    reduce,
    reduce_residual,
)
from .fracpow import (
    CompanionWeights,
    companion3_frac_power,
    companion_2x2,
    companion_3x3,
    companion_weights,
    frac_power,
    frac_power_2x2,
    frac_power_eig,
    frac_power_integral,
    principal_log,
)
from .forcing import FORCING_NAMES, get_forcing
from .simulate import SimProblem, Trajectory, compare_components, integrate_scalar, integrate_system
from .demos import cascade_matrix, demo_cascade, demo_oscillator, demo_thirdorder
from .tolerances import DEFAULT, Tolerances

__version__ = "0.1.0"

__all__ = [
    "CharPoly",
    "CompanionWeights",
    "DEFAULT",
    "FORCING_NAMES",
    "ForcingSpec",
    "OperatorFamily",
    "ReducedEquation",
    "ScalarReduction",
    "SimProblem",
    "StructuredForcing",
    "Tolerances",
    "Trajectory",
    "build_operator_family",
    "cascade_matrix",
    "char_poly",
    "companion3_frac_power",
    "companion_2x2",
    "companion_3x3",
    "companion_scalar_reduce",
    "companion_weights",
    "compare_components",
    "demo_cascade",
    "demo_oscillator",
    "demo_thirdorder",
    "derivative_chain",
    "derivative_stack",
    "determinant",
    "exterior_trace",
    "faa_di_bruno_derivative",
    "faa_di_bruno_tuples",
    "frac_power",
    "frac_power_2x2",
    "frac_power_eig",
    "frac_power_integral",
    "get_forcing",
    "integrate_scalar",
    "integrate_system",
    "mat_mul",
    "poly_eval_matrix",
    "principal_log",
    "reduce",
    "reduce_residual",
    "trace",
]
