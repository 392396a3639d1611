"""Riemann-problem factorization for the kinetic (BGK) second Stokes problem."""
from .dispersion import (
    BoundaryPair,
    ProblemParams,
    Regime,
    dispersion_function,
    find_mu0,
    lambda0_complex,
    lambda0_real,
    lambda_boundary,
    laurent_tail,
    s,
)
from .factorization import Factorizer, v_of_z, x_boundary, x_of_z
from .quadrature import QuadratureConfig, cauchy_pv, integrate, integrate_semi_infinite
from .riemann import critical_frequency, theta_branch, theta_unwrapped, zero_crossing_frequency
from .spectrum import discrete_spectrum, eta0_explicit, eta0_newton_oracle

__version__ = "0.1.0"
