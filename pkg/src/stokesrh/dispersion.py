"""Dispersion function of the BGK second Stokes problem.

lambda0(z) = pi^{-1/2} int t exp(-t^2) / (t - z) dt is the classical plasma
dispersion integral written as 1 + z Z(z); lambda(z) = lambda0(z) - i omega1.
On the real axis the Sokhotski limits are

    lambda^{+-}(mu) = lambda0(mu) - i omega1 +- i s(mu),  s(mu) = sqrt(pi) mu exp(-mu^2).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq
from scipy.special import wofz

from .errors import ConfigurationError, GuardBandError, OnRealAxis, TooClose

SQRT_PI = math.sqrt(math.pi)

#: Half-width of the excluded band around the critical frequency.
GUARD_BAND = 1e-3


class Regime(enum.Enum):
    INDEX_ONE = 1
    INDEX_ZERO = 0

    @property
    def index(self) -> int:
        return self.value


@dataclass(frozen=True)
class ProblemParams:
    """Oscillation frequency ``omega1`` with the derived z0 and regime.

    The regime is IndexOne below the critical frequency (see
    :func:`stokesrh.riemann.critical_frequency`) and IndexZero above it.
    Frequencies within ``GUARD_BAND`` of the critical value are rejected.
    """

    omega1: float
    z0: complex = field(init=False)
    regime: Regime = field(init=False)

    def __post_init__(self):
        w = float(self.omega1)
        if not (w >= 0 and math.isfinite(w)):
            raise ConfigurationError(f"omega1 must be finite and >= 0, got {self.omega1}")
        object.__setattr__(self, "omega1", w)
        object.__setattr__(self, "z0", complex(1.0, -w))
        object.__setattr__(self, "regime", classify_regime(w))

    @property
    def index(self) -> int:
        return self.regime.index


def classify_regime(omega1: float) -> Regime:
    from .riemann import critical_frequency

    w_star = critical_frequency()
    if abs(omega1 - w_star) < GUARD_BAND:
        raise GuardBandError(
            f"omega1={omega1} is within critical guard band "
            f"|omega1 - {w_star:.6f}| < {GUARD_BAND}"
        )
    return Regime.INDEX_ONE if omega1 < w_star else Regime.INDEX_ZERO


@dataclass(frozen=True)
class BoundaryPair:
    """Limits of a sectionally analytic function from above and below the cut."""

    plus: complex | np.ndarray
    minus: complex | np.ndarray

    @property
    def jump(self):
        return self.plus - self.minus

    @property
    def mean(self):
        return 0.5 * (self.plus + self.minus)


def s(mu):
    """Jump density sqrt(pi) mu exp(-mu^2) of lambda across the real axis."""
    mu = np.asarray(mu, dtype=float)
    return SQRT_PI * mu * np.exp(-mu * mu)


# t-integral nodes: Gauss-Legendre panels on [0, 1] graded geometrically
# toward t = 1, where exp(-mu^2 (1 - t^2)) concentrates for large |mu|.
def _graded_rule(levels: int = 40, order: int = 12):
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.concatenate([[0.0], 1.0 - 0.5 ** np.arange(1, levels + 1), [1.0]])
    a, b = edges[:-1], edges[1:]
    t = (0.5 * (a + b)[:, None] + 0.5 * (b - a)[:, None] * x).ravel()
    wt = (0.5 * (b - a)[:, None] * w).ravel()
    # 1 - t computed from the panel geometry, not by subtraction.
    one_minus_t = (0.5 * ((1 - a) + (1 - b))[:, None] - 0.5 * (b - a)[:, None] * x).ravel()
    return t, wt, one_minus_t


_T_NODES, _T_WEIGHTS, _ONE_MINUS_T = _graded_rule()
_ONE_MINUS_T2 = _ONE_MINUS_T * (1.0 + _T_NODES)


def lambda0_real(mu):
    """lambda0 on the real axis, 1 - 2 mu^2 int_0^1 exp(-mu^2 (1 - t^2)) dt.

    Accurate to a few ulp for |mu| up to ~1e5; even in mu.
    """
    mu = np.asarray(mu, dtype=float)
    m2 = (mu * mu)[..., None]
    integral = np.exp(-m2 * _ONE_MINUS_T2) @ _T_WEIGHTS
    return 1.0 - 2.0 * mu * mu * integral


def lambda0_complex(z):
    """lambda0 off the real axis.

    Upper half-plane: 1 + z Z(z) with Z(z) = i sqrt(pi) w(z) and w the
    Faddeeva function; lower half-plane by conjugate symmetry.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag == 0):
        raise OnRealAxis("lambda0_complex needs Im z != 0; use lambda0_real or boundary values")
    upper = np.where(z.imag > 0, z, np.conj(z))
    val = 1.0 + upper * (1j * SQRT_PI) * wofz(upper)
    out = np.where(z.imag > 0, val, np.conj(val))
    return out[()] if out.ndim == 0 else out


def dispersion_function(z, p: ProblemParams):
    """lambda(z) = -i omega1 + lambda0(z), for Im z != 0."""
    return lambda0_complex(z) - 1j * p.omega1


def lambda_boundary(mu, p: ProblemParams) -> BoundaryPair:
    """Sokhotski limits lambda^{+-}(mu) on the real axis."""
    base = lambda0_real(mu) - 1j * p.omega1
    js = 1j * s(mu)
    return BoundaryPair(plus=base + js, minus=base - js)


def laurent_tail(z, p: ProblemParams):
    """Four-term expansion -i w - 1/(2z^2) - 3/(4z^4) - 15/(8z^6) at infinity."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) <= 3):
        raise TooClose("laurent_tail is only used for |z| > 3")
    r = 1.0 / (z * z)
    out = -1j * p.omega1 - r * (0.5 + r * (0.75 + r * 1.875))
    return out[()] if out.ndim == 0 else out


@lru_cache(maxsize=None)
def find_mu0() -> float:
    """Positive real zero of lambda0 (about 0.924), bracketed in [0.5, 1.5]."""
    f = lambda m: float(lambda0_real(m))
    return brentq(f, 0.5, 1.5, xtol=1e-16, rtol=4 * np.finfo(float).eps, maxiter=200)
