"""Exact-arithmetic toolkit for characters and Hilbert series of twisted
commutative algebras: sigma-basis formal characters, enhanced Hilbert series,
Grassmannian pushforwards, Weyl-integration invariants, and D-finite guessing.

All coefficients are `fractions.Fraction`; every comparison in the test suite
is exact.
"""

from .partitions import (
    CharTable,
    dim_schur,
    dim_specht,
    enumerate_partitions,
    kostka_number,
    partitions_in_box,
    partitions_up_to,
    sym_character,
    transpose,
    z_of,
)
from .symfunc import (
    MONOMIAL,
    POWERSUM,
    SCHUR,
    SymFunc,
    change_basis,
    dagger,
    ddag,
    plethysm_power,
    schur_derivative,
    sym_algebra_character,
)
from .seriesforms import (
    CharPolyForm,
    EnhancedExpr,
    ExpPoly,
    OdeOperator,
    PoincareSeries,
    SigmaExpr,
    TSeries,
    annihilator,
    char_poly_form,
    character_at,
    enhanced_expand,
    ex_sigma,
    ex_specialize,
    exppoly_taylor,
    fourier_dual_hilbert,
    hilbert_from_poincare,
    phi_enhanced,
    phi_sigma,
    poincare_series,
    sigma_ddag_check,
    sigma_expand,
    sigma_recognize,
    tca_enhanced_exp,
    ts_egf,
    umbral_substitute,
)
from .grassmann import (
    GrClass,
    LambdaGrClass,
    bott_pushforward,
    detring_formal_character,
    euler_schur_q,
    gessel_enhanced,
    m_shifted_class,
    mu_r,
    pairing,
    pushforward_module_character,
    rank1_enhanced_closed,
    theta_r,
)
from .torus import (
    KernelSeries,
    LaurentPoly,
    enhanced_from_equivariant,
    hilbert_from_weight_presentation,
    invariant_dimensions,
    kernel_K,
    power_sum_lp,
    schur_lp,
    sym_degree_characters,
    weyl_inner,
)
from .dfinite import apply_ode, guess_ode, hadamard, needed_length, ode_to_text

__version__ = "1.0.0"

__all__ = [
    "CharTable",
    "CharPolyForm",
    "EnhancedExpr",
    "ExpPoly",
    "GrClass",
    "KernelSeries",
    "LambdaGrClass",
    "LaurentPoly",
    "MONOMIAL",
    "OdeOperator",
    "POWERSUM",
    "PoincareSeries",
    "SCHUR",
    "SigmaExpr",
    "SymFunc",
    "TSeries",
    "annihilator",
    "apply_ode",
    "bott_pushforward",
    "change_basis",
    "char_poly_form",
    "character_at",
    "dagger",
    "ddag",
    "detring_formal_character",
    "dim_schur",
    "dim_specht",
    "enhanced_expand",
    "enhanced_from_equivariant",
    "enumerate_partitions",
    "euler_schur_q",
    "ex_sigma",
    "ex_specialize",
    "exppoly_taylor",
    "fourier_dual_hilbert",
    "gessel_enhanced",
    "guess_ode",
    "hadamard",
    "hilbert_from_poincare",
    "hilbert_from_weight_presentation",
    "invariant_dimensions",
    "kernel_K",
    "kostka_number",
    "m_shifted_class",
    "mu_r",
    "needed_length",
    "ode_to_text",
    "pairing",
    "partitions_in_box",
    "partitions_up_to",
    "phi_enhanced",
    "phi_sigma",
    "plethysm_power",
    "poincare_series",
    "power_sum_lp",
    "pushforward_module_character",
    "rank1_enhanced_closed",
    "schur_derivative",
    "schur_lp",
    "sigma_ddag_check",
    "sigma_expand",
    "sigma_recognize",
    "sym_algebra_character",
    "sym_character",
    "sym_degree_characters",
    "tca_enhanced_exp",
    "theta_r",
    "transpose",
    "ts_egf",
    "umbral_substitute",
    "weyl_inner",
    "z_of",
]
