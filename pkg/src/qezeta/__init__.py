"""q-Euler polynomials of higher order and their zeta/l-type interpolating
functions, with characters, independent summation oracles, and a CLI."""

from .characters import (DirichletCharacter, chi_at, enumerate_prime_characters,
                         from_generator, from_table, new_character, principal,
                         to_spec)
from .errors import (BranchError, ConvergenceError, DomainError, PoleError,
                     QezetaError, QuadratureError, ValidationError)
from .qcore import (EvalContext, SeriesResult, complex_pow, gamma,
                    gen_binomial, neville_extrapolate, q_number,
                    validate_domain)
from .qeuler import (abel_oracle, distribution_rhs, distribution_rhs_chi,
                     euler_poly_chi_r, euler_poly_r, euler_poly_r_blocked,
                     gen_fn, gen_fn_chi)
from .qzeta import l, l_r, mellin_oracle, special_value_residual, zeta, zeta_r

__version__ = "0.1.0"

__all__ = [
    "BranchError", "ConvergenceError", "DirichletCharacter", "DomainError",
    "EvalContext", "PoleError", "QezetaError", "QuadratureError",
    "SeriesResult", "ValidationError", "abel_oracle", "chi_at", "complex_pow",
    "distribution_rhs", "distribution_rhs_chi", "enumerate_prime_characters",
    "euler_poly_chi_r", "euler_poly_r", "euler_poly_r_blocked",
    "from_generator", "from_table", "gamma", "gen_binomial", "gen_fn",
    "gen_fn_chi", "l", "l_r", "mellin_oracle", "neville_extrapolate",
    "new_character", "principal", "q_number", "special_value_residual",
    "to_spec", "validate_domain", "zeta", "zeta_r",
]
