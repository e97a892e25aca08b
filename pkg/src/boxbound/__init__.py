"""Measure-based upper bounds for minimising a polynomial over the box [-1, 1]^n."""

from .chebyshev import (
    ChebPoly,
    MonomialPoly,
    cheb_eval_1d,
    chebu_eval_1d,
    inner_product_mu,
    monomial_to_cheb,
    poly_eval,
    quadrature_mu,
)
from .eigensolve import (
    BoundResult,
    density_eval_grid,
    min_generalized_eigenvalue,
    schmudgen_bound,
    sos_lebesgue_bound,
)
from .errors import (
    DefinitenessError,
    DegenerateInputError,
    DomainError,
    PreconditionError,
    UnknownFunctionError,
)
from .jackson import (
    delta_density_1d,
    delta_density_nd,
    degree_split,
    error_constants,
    gaussian_overlay,
    jackson_bound,
    jackson_coefficients,
    max_cheb_coeff,
    psi,
)
from .moments import (
    assemble_pencil,
    assemble_pencil_lebesgue,
    index_set,
    lebesgue_moment,
    triple_product_mu,
    triple_product_mu_weighted,
)
from .testfns import TestFunction, catalog, lookup

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "ChebPoly",
    "DefinitenessError",
    "DegenerateInputError",
    "DomainError",
    "MonomialPoly",
    "PreconditionError",
    "TestFunction",
    "UnknownFunctionError",
    "assemble_pencil",
    "assemble_pencil_lebesgue",
    "catalog",
    "cheb_eval_1d",
    "chebu_eval_1d",
    "degree_split",
    "delta_density_1d",
    "delta_density_nd",
    "density_eval_grid",
    "error_constants",
    "gaussian_overlay",
    "index_set",
    "inner_product_mu",
    "jackson_bound",
    "jackson_coefficients",
    "lebesgue_moment",
    "lookup",
    "max_cheb_coeff",
    "min_generalized_eigenvalue",
    "monomial_to_cheb",
    "poly_eval",
    "psi",
    "quadrature_mu",
    "schmudgen_bound",
    "sos_lebesgue_bound",
    "triple_product_mu",
    "triple_product_mu_weighted",
]
