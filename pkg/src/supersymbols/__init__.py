"""Exact calculi for superalgebras of pseudodifferential symbols, contact fields and Weyl supermatrices."""

from .coeff import ALPHA, H, MU, OMEGA, Coefficient, coeff, evaluate, param
from .contact import (
    VectorField,
    cocycle_verify,
    contact_bracket,
    contact_field,
    k4_basis,
    k4_family,
    s2_basis,
    s_alpha_basis,
    vf_bracket,
)
from .gamma import (
    GammaAlgebra,
    build_gamma,
    contraction_limit_check,
    gamma_alpha,
    gamma_alpha_generators,
    generate_from_odd,
    hom_check,
    jacobi_check,
    phi_map,
    psl_check,
)
from .grassmann import LambdaElement
from .psymbols import (
    PSymbol,
    circ_h,
    contraction_first_order,
    normalized_bracket_h,
    parse_symbol,
    poisson_bracket,
    super_commutator_h,
)
from .report import Report, SuiteConfig, emit_report
from .suites import run_suite
from .vspace import VVector, rep_action
from .weyl import WeylElement, WeylSuperMatrix, embed_I, embed_J, gamma_matrix, parse_weyl, supermatrix_bracket

__version__ = "0.1.0"
