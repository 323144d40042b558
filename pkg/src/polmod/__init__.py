"""Exact engine for polarization modules of symmetric polynomials.

Core layers: polyring (packed-monomial exact polynomials in a matrix of
variables with derivative, polarization, and permutation actions), symfunc
(partitions, characters, symmetric-function expansions and transitions),
closure (graded spans and the module fixpoint), frobenius (isotypic
decompositions, bigraded series, closed-form predictions), exceptions
(degree 2 and 3 classification with its determinant apparatus).
"""

from .closure import GeneratorFamily, GradedSpan, derivative_closure, polarization_closure, polarization_module
from .errors import ConsistencyError, NonHomogeneous, NotSymmetric, PolmodError, UsageError, ZeroPolynomial
from .exceptions import aux_poly, build_matrix, classify, det_identity_check, det_T, exception_equation, gcd_form_check, h_gram_check, is_n_exception, rank_lower_bound_check
from .frobenius import FrobeniusSeries, component_character, component_isotype, frobenius_series, hilbert_series, hilbert_series_h, oracle_series
from .polyring import Poly, PolyRing, ring
from .rationals import QQ
from .symfunc import SymSeries, diag_power_sum, expand_basis, h_to_schur, mn_character, multi_elementary, schur_to_h, to_schur

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError",
    "FrobeniusSeries",
    "GeneratorFamily",
    "GradedSpan",
    "NonHomogeneous",
    "NotSymmetric",
    "Poly",
    "PolmodError",
    "PolyRing",
    "QQ",
    "SymSeries",
    "UsageError",
    "ZeroPolynomial",
    "aux_poly",
    "build_matrix",
    "classify",
    "component_character",
    "component_isotype",
    "derivative_closure",
    "det_T",
    "det_identity_check",
    "diag_power_sum",
    "exception_equation",
    "expand_basis",
    "frobenius_series",
    "gcd_form_check",
    "h_gram_check",
    "h_to_schur",
    "hilbert_series",
    "hilbert_series_h",
    "is_n_exception",
    "mn_character",
    "multi_elementary",
    "oracle_series",
    "polarization_closure",
    "polarization_module",
    "rank_lower_bound_check",
    "ring",
    "schur_to_h",
    "to_schur",
    "__version__",
]
