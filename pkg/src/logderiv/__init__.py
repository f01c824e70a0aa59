"""Logarithmic derivation modules, graded free resolutions, Betti numbers
and Hilbert-Poincare series over exact rationals."""

from .poly import (
    MonomialOrder,
    NonPositiveWeightError,
    NotQuasiHomogeneous,
    ParseError,
    Polynomial,
    ZeroPolynomialError,
    format_poly,
    infer_weights,
    parse_poly,
    partial_derivative,
    squarefree_test,
    u_degree,
)
from .groebner import (
    FreeModule,
    GroebnerBasis,
    buchberger,
    divide,
    intersect,
    module_equal,
    module_quotient,
    normal_form,
    polynomial_gcd,
    syzygies,
)
from .derivmod import (
    FactoredPolynomial,
    GradedContext,
    SaitoCertificate,
    annihilator_check,
    apply_derivation,
    euler_derivation,
    format_derivation,
    generalized_log_module,
    is_graded_submodule,
    log_derivations,
    parse_derivation,
    saito_check,
)
from .resolution import (
    BettiTable,
    ModuleMap,
    Resolution,
    alternating_degree_sum,
    alternating_rank_sum,
    betti_numbers,
    certify_exact,
    free_resolution,
    minimize,
    pad_with_trivial_pair,
    presentation_resolution,
)
from .hilbert import (
    ChiValue,
    HPSeries,
    chi,
    chi_additivity_check,
    dimension_via_pole,
    format_series,
    hp_bruteforce,
    hp_expand,
    hp_free,
    hp_from_resolution,
    verify_coprime_sum,
    verify_degree_identity,
)
from .homog import (
    HomogenizedComplex,
    HomogenizedElement,
    chi_homogenized,
    dehomogenize_vector,
    homogenize_module,
    homogenize_poly,
    homogenize_resolution,
    homogenize_vector,
    verify_lemma_intersection,
)

__all__ = [name for name in dir() if not name.startswith("_")]
