"""Exact computations with the Grothendieck classes of M_{0,n}."""

from .closedform import (
    closed_form_betti,
    lambert_coeffs,
    lambert_convolution_check,
    q_polynomials,
)
from .expfun import ExpPoly, decompose_alpha, derive_alpha_series, solve_linear_ode, taylor_coeffs
from .moduli import ClassCache, betti, gamma_class, grothendieck_class
from .polycore import Poly

__version__ = "0.1.0"
