"""Exact quantum Pfaffians, determinants and FRT checks over Laurent polynomials in q."""

__version__ = "0.1.0"

from .errors import (
    DegenerateInput,
    DomainError,
    MissingRelation,
    NotOrientable,
    ParseError,
    QPfaffError,
    ZeroBase,
)
from .scalar import LaurentScalar, format_scalar, parse_scalar, q_binomial, q_factorial, q_integer
from .ncpoly import (
    NCPolynomial,
    Presentation,
    RewriteRule,
    nc_mul,
    normal_form,
    parse_presentation,
    render,
    uniform_q_presentation,
)
from .combinat import PerfectMatching, Permutation, enumerate_matchings, matching_inversions
from .qlinalg import (
    SkewMatrixNum,
    SkewMatrixSym,
    classical_determinant,
    classical_pfaffian,
    identity_scan,
    quantum_determinant,
    quantum_pfaffian,
)
from .extalg import WedgeElement, omega_from_matrix, wedge_mul, wedge_power_top
from .frt import build_r_matrix, check_detq_central, check_ybe, extract_rtt_relations

__all__ = [
    "DegenerateInput",
    "DomainError",
    "MissingRelation",
    "NotOrientable",
    "ParseError",
    "QPfaffError",
    "ZeroBase",
    "LaurentScalar",
    "format_scalar",
    "parse_scalar",
    "q_binomial",
    "q_factorial",
    "q_integer",
    "NCPolynomial",
    "Presentation",
    "RewriteRule",
    "nc_mul",
    "normal_form",
    "parse_presentation",
    "render",
    "uniform_q_presentation",
    "PerfectMatching",
    "Permutation",
    "enumerate_matchings",
    "matching_inversions",
    "SkewMatrixNum",
    "SkewMatrixSym",
    "classical_determinant",
    "classical_pfaffian",
    "identity_scan",
    "quantum_determinant",
    "quantum_pfaffian",
    "WedgeElement",
    "omega_from_matrix",
    "wedge_mul",
    "wedge_power_top",
    "build_r_matrix",
    "check_detq_central",
    "check_ybe",
    "extract_rtt_relations",
]
