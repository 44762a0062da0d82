"""Certified-error evaluation of Euler-type sums and their modern relatives.

The package covers five layers that feed one another: an arbitrary
precision kernel with explicit error bounds (:mod:`.numkernel`), classical
single sums and identity checks (:mod:`.eulerfun`), multiple zeta and
alternating multiple sums (:mod:`.mzv`), a symbolic coaction calculus with
a numerical period map (:mod:`.symbolic`), graph polynomials with a Monte
Carlo period integrator (:mod:`.feynper`), and the electron g-2 series
with its measurement registry (:mod:`.g2`).  The ``euler-periods``
console script in :mod:`.cli` exposes all of it.
"""

from .errors import (
    Disconnected,
    DivergentIndex,
    DomainError,
    EulerPeriodsError,
    InputError,
    InternalCheckError,
    NoConvergence,
    NonFiniteSample,
    NotPrimitive,
    ParseError,
    PrecisionNotMet,
    SchemaError,
    TooLarge,
)
from .eulerfun import (
    IdentityKind,
    gamma_const,
    identity_residual,
    phi,
    polylog,
    zeta,
    zeta_even_closed,
)
from .feynper import (
    GraphPolynomial,
    MultiGraph,
    PeriodEstimate,
    SelfTestReport,
    bubble,
    graph_from_dict,
    integrator_selftest,
    is_primitive_log_divergent,
    k4,
    kirchhoff_polynomial,
    load_graph,
    loop_number,
    matrix_tree_count,
    named_graph,
    period_mc,
    snap_to_multiple,
    spanning_trees,
    triangle,
    wheel,
)
from .g2 import (
    A4_DIGITS,
    CoeffMode,
    CoefficientSet,
    ComparisonResult,
    Measurement,
    assemble,
    coeff_a2,
    coeff_a3,
    combine_uncertainties,
    compare,
    default_registry_path,
    format_difference,
    g_factor,
    invert_alpha,
    load_registry,
    lookup,
)
from .mzv import multiphi, mzv, mzv_bruteforce, p35_combination, stuffle_residual
from .numkernel import (
    BigReal,
    SeriesSpec,
    accel_alt_sum,
    bernoulli,
    em_sum,
    euler_at_zero,
    working_dps,
)
from .symbolic import (
    MotivicExpr,
    StabilityReport,
    TensorSum,
    UnipotentExpr,
    UTensorSum,
    coact,
    coassoc_residual,
    galois_conjugates,
    hopf_coproduct,
    parse_expr,
    period_map,
    stability_report,
)

__version__ = "0.1.0"

__all__ = [
    "A4_DIGITS",
    "BigReal",
    "CoeffMode",
    "CoefficientSet",
    "ComparisonResult",
    "Disconnected",
    "DivergentIndex",
    "DomainError",
    "EulerPeriodsError",
    "GraphPolynomial",
    "IdentityKind",
    "InputError",
    "InternalCheckError",
    "Measurement",
    "MotivicExpr",
    "MultiGraph",
    "NoConvergence",
    "NonFiniteSample",
    "NotPrimitive",
    "ParseError",
    "PeriodEstimate",
    "PrecisionNotMet",
    "SchemaError",
    "SelfTestReport",
    "SeriesSpec",
    "StabilityReport",
    "TensorSum",
    "TooLarge",
    "UTensorSum",
    "UnipotentExpr",
    "accel_alt_sum",
    "assemble",
    "bernoulli",
    "bubble",
    "coact",
    "coassoc_residual",
    "coeff_a2",
    "coeff_a3",
    "combine_uncertainties",
    "compare",
    "default_registry_path",
    "em_sum",
    "euler_at_zero",
    "format_difference",
    "g_factor",
    "galois_conjugates",
    "gamma_const",
    "graph_from_dict",
    "hopf_coproduct",
    "identity_residual",
    "integrator_selftest",
    "invert_alpha",
    "is_primitive_log_divergent",
    "k4",
    "kirchhoff_polynomial",
    "load_graph",
    "load_registry",
    "lookup",
    "loop_number",
    "matrix_tree_count",
    "multiphi",
    "mzv",
    "mzv_bruteforce",
    "named_graph",
    "p35_combination",
    "parse_expr",
    "period_map",
    "period_mc",
    "phi",
    "polylog",
    "snap_to_multiple",
    "spanning_trees",
    "stability_report",
    "stuffle_residual",
    "triangle",
    "wheel",
    "working_dps",
    "zeta",
    "zeta_even_closed",
]
