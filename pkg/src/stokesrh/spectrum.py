"""Discrete spectrum: zeros +-eta0 of the dispersion function and the
factorization lambda(z) = i w (z^2 - eta0^2) X(z) X(-z) (index 1) or
lambda(z) = -i w X(z) X(-z) (index 0).

eta0 is computed explicitly from the factorization evaluated at z = i and
checked against a Newton iteration that never touches X.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dispersion import (
    SQRT_PI,
    ProblemParams,
    dispersion_function,
    lambda0_real,
    lambda_boundary,
    s,
)
from .errors import BranchAmbiguity, NoConvergence, WrongRegime
from .factorization import Factorizer, cauchy_transform, v_of_z, x_boundary, x_of_z, x_on_cut
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, cauchy_pv, integrate


def eta0_asymptotic(omega1: float) -> complex:
    """Small-frequency zero (1 + i) / (2 sqrt(omega1))."""
    return (1 + 1j) / (2 * math.sqrt(omega1))


def _select(root: complex, z0: complex) -> complex:
    """Pick the sign of ``root`` with Re(z0/eta) > 0 (the decaying mode)."""
    r = (z0 / root).real
    if abs(r) < 1e-14 * abs(z0 / root):
        raise BranchAmbiguity(f"Re(z0/eta) vanishes for eta = {root}; no decaying branch")
    return root if r > 0 else -root


def eta0_explicit(f: Factorizer) -> complex:
    """eta0 = sqrt(-1 + i lambda(i)/w * exp(-V(i) - V(-i))), sign by Re(z0/eta0) > 0.

    V(+-i) are evaluated with tolerances tightened a hundredfold.
    """
    p = f.params
    if p.index != 1:
        raise WrongRegime("no discrete spectrum when the index is 0")
    if p.omega1 <= 0:
        raise WrongRegime("eta0 is at infinity for omega1 = 0")
    v = v_of_z(np.array([1j, -1j]), f, f.cfg.tightened(100.0))
    lam_i = complex(dispersion_function(1j, p))
    sq = -1 + 1j * lam_i / p.omega1 * cmath.exp(-(v[0] + v[1]))
    return _select(cmath.sqrt(sq), p.z0)


def _newton(lam: Callable[[complex], complex], z: complex, tol: float, maxiter: int):
    for _ in range(maxiter):
        if z.imag == 0:
            z = complex(z.real, 1e-8)
        val = lam(z)
        if abs(val) < tol:
            return z
        h = 1e-6 * abs(z)
        d = (lam(z + h) - lam(z - h)) / (2 * h)
        if d == 0 or not np.isfinite(d):
            return None
        step = z - val / d
        if not np.isfinite(step) or abs(step) > 1e6:
            return None
        # lambda jumps across the real axis; stay in the seed's half-plane.
        if step.imag * z.imag <= 0:
            step = complex(step.real, 0.5 * z.imag)
        z = step
    return None


def eta0_newton_oracle(p: ProblemParams, tol: float = 1e-12, maxiter: int = 100) -> complex:
    """Zero of lambda by complex Newton with a central-difference derivative,
    seeded at the small-frequency asymptote."""
    if p.index != 1:
        raise WrongRegime("no discrete spectrum when the index is 0")
    lam = lambda z: complex(dispersion_function(z, p))
    root = _newton(lam, eta0_asymptotic(p.omega1), tol, maxiter)
    if root is None:
        raise NoConvergence(f"Newton did not reach |lambda| < {tol} for omega1={p.omega1}")
    return _select(root, p.z0)


def find_zeros(p: ProblemParams, n_seeds: int = 20, seed: int = 0, box: float = 3.0,
               tol: float = 1e-12) -> list[complex]:
    """Distinct zeros of lambda found by Newton from random seeds in both half-planes."""
    rng = np.random.default_rng(seed)
    lam = lambda z: complex(dispersion_function(z, p))
    roots: list[complex] = []
    for sign in (1, -1):
        re = rng.uniform(-box, box, n_seeds)
        im = sign * rng.uniform(0.05, box, n_seeds)
        for z in re + 1j * im:
            r = _newton(lam, complex(z), tol, 100)
            if r is not None and all(abs(r - q) > 1e-8 for q in roots):
                roots.append(r)
    return sorted(roots, key=lambda r: (r.imag, r.real))


@dataclass(frozen=True)
class SpectrumResult:
    eta0: complex | None
    eta0_asymptotic: complex | None
    eta0_oracle: complex | None
    factorization_residual_max: float
    count: int


def standard_z_grid(n_radii: int = 100, r_min: float = 0.5, r_max: float = 20.0) -> np.ndarray:
    """Six rays at +-pi/4, +-pi/2, +-3pi/4 with ``n_radii`` radii each."""
    r = np.linspace(r_min, r_max, n_radii)
    args = np.array([1, 2, 3, -1, -2, -3]) * (math.pi / 4)
    return (r[None, :] * np.exp(1j * args[:, None])).ravel()


def factorization_rhs(z, f: Factorizer, eta0: complex | None = None):
    z = np.asarray(z, dtype=complex)
    xx = x_of_z(np.concatenate([z.ravel(), -z.ravel()]), f)
    prod = (xx[: z.size] * xx[z.size:]).reshape(z.shape)
    w = f.omega1
    if f.index == 1:
        eta0 = eta0_explicit(f) if eta0 is None else eta0
        return 1j * w * (z * z - eta0 * eta0) * prod
    return -1j * w * prod


def verify_factorization(z_grid, f: Factorizer, eta0: complex | None = None) -> float:
    """max |lambda(z) - factorized form| / |lambda(z)| over the grid."""
    z = np.asarray(z_grid, dtype=complex)
    if np.any(z.imag == 0):
        raise ValueError("factorization grid must avoid the real axis")
    lam = dispersion_function(z, f.params)
    return float(np.max(np.abs(lam - factorization_rhs(z, f, eta0)) / np.abs(lam)))


def verify_boundary_factorization(mu_grid, f: Factorizer, eta0: complex | None = None) -> float:
    """Boundary form of the factorization on both half-axes, both limits.

    mu > 0:  lambda^{+-}(mu) = c(mu) X^{+-}(mu) X(-mu)
    mu < 0:  lambda^{+-}(mu) = c(mu) X(mu) X^{-+}(-mu)
    with c = i w (mu^2 - eta0^2) for index 1 and -i w for index 0.
    """
    mu = np.asarray(mu_grid, dtype=float)
    if np.any(mu == 0):
        raise ValueError("boundary factorization grid must avoid mu = 0")
    a = np.abs(mu)
    xb = x_boundary(a, f)
    x_neg = x_of_z(-a + 0j, f)
    p = f.params
    if f.index == 1:
        eta0 = eta0_explicit(f) if eta0 is None else eta0
        c = 1j * p.omega1 * (mu * mu - eta0 * eta0)
    else:
        c = -1j * p.omega1
    lb = lambda_boundary(mu, p)
    pos = mu > 0
    rhs_plus = c * x_neg * np.where(pos, xb.plus, xb.minus)
    rhs_minus = c * x_neg * np.where(pos, xb.minus, xb.plus)
    res = np.concatenate([
        np.abs(lb.plus - rhs_plus) / np.abs(lb.plus),
        np.abs(lb.minus - rhs_minus) / np.abs(lb.minus),
    ])
    return float(res.max())


def reflection_residual(mu, p: ProblemParams) -> float:
    """max of |lambda^+(-mu) - lambda^-(mu)| and |lambda^-(-mu) - lambda^+(mu)|."""
    mu = np.asarray(mu, dtype=float)
    a = lambda_boundary(-mu, p)
    b = lambda_boundary(mu, p)
    return float(max(np.max(np.abs(a.plus - b.minus)), np.max(np.abs(a.minus - b.plus))))


def nonlinear_representation(z, f: Factorizer, eta0: complex | None = None):
    """X(z) from its values on the negative axis:
    (1/(i w pi)) int s(mu) / ((mu^2 - eta0^2) X(-mu) (mu - z)) dmu."""
    if f.index != 1:
        raise WrongRegime("the nonlinear representation is an index-one identity")
    eta0 = eta0_explicit(f) if eta0 is None else eta0

    def density(mu):
        return s(mu) / ((mu * mu - eta0 * eta0) * x_of_z(-mu + 0j, f))

    return cauchy_transform(density, z, f.cfg) / (1j * f.omega1 * math.pi)


def verify_nonlinear_representation(z, f: Factorizer, eta0: complex | None = None) -> float:
    x = x_of_z(z, f)
    return float(np.max(np.abs(x - nonlinear_representation(z, f, eta0)) / np.abs(x)))


def discrete_spectrum(f: Factorizer, z_grid=None) -> SpectrumResult:
    """Explicit zero, its asymptote, the Newton oracle and the factorization residual."""
    z_grid = standard_z_grid() if z_grid is None else z_grid
    if f.index == 0:
        return SpectrumResult(None, None, None, verify_factorization(z_grid, f), 0)
    eta0 = eta0_explicit(f)
    return SpectrumResult(
        eta0=eta0,
        eta0_asymptotic=eta0_asymptotic(f.omega1),
        eta0_oracle=eta0_newton_oracle(f.params),
        factorization_residual_max=verify_factorization(z_grid, f, eta0),
        count=2 * f.index,
    )


# --- eigenfunctions -------------------------------------------------------------

class EigenKind(enum.Enum):
    CONTINUUM = "continuum"
    DISCRETE = "discrete"
    DEGENERATE_H1 = "degenerate_h1"
    DEGENERATE_H2 = "degenerate_h2"


@dataclass(frozen=True)
class Eigenfunction:
    """Phi(eta, mu) = pv_coefficient * P 1/(eta - mu) + singular_coefficient * delta(eta - mu).

    Only meaningful under an integral; :meth:`apply` pairs it with a test
    function g, i.e. returns int g(mu) Phi(eta, mu) dmu.
    """

    eta: complex | float
    pv_coefficient: complex
    singular_coefficient: complex | None
    kind: EigenKind

    def apply(self, g: Callable[[np.ndarray], np.ndarray],
              cfg: QuadratureConfig | None = None) -> complex:
        cfg = cfg or DEFAULT_CONFIG
        if self.kind is EigenKind.DISCRETE:
            val = integrate(lambda m: g(m) / (self.eta - m), -cfg.cutoff, cfg.cutoff, cfg)
            return complex(self.pv_coefficient * val)
        if self.kind is not EigenKind.CONTINUUM:
            raise TypeError("degenerate modes are not distributions in mu")
        eta = float(self.eta)
        pv = 0.0 if eta == 0 else _pv_real_line(g, eta, cfg)
        return complex(self.pv_coefficient * pv + self.singular_coefficient * g(np.array([eta]))[0])

    def normalization(self, z0: complex, cfg: QuadratureConfig | None = None) -> complex:
        """(1/z0) int exp(-mu^2) Phi(eta, mu) dmu; equal to 1 by construction."""
        return self.apply(lambda m: np.exp(-m * m), cfg) / z0


def _pv_real_line(g, eta: float, cfg: QuadratureConfig) -> complex:
    """PV int_R g(mu)/(eta - mu) dmu for real eta != 0 by folding onto (0, inf)."""
    if eta < 0:
        return -_pv_real_line(lambda m: g(-m), -eta, cfg)
    right = cauchy_pv(g, eta, cfg)
    left = integrate(lambda t: g(-t) / (t + eta), 0.0, cfg.cutoff, cfg, points=(1.0,))
    return complex(-right + left)


def continuum_eigenfunction(eta: float, p: ProblemParams) -> Eigenfunction:
    eta = float(eta)
    lam = complex(lambda0_real(eta)) - 1j * p.omega1
    return Eigenfunction(
        eta=eta,
        pv_coefficient=eta / SQRT_PI,
        singular_coefficient=math.exp(eta * eta) * lam,
        kind=EigenKind.CONTINUUM,
    )


def discrete_eigenfunction(eta0: complex) -> Eigenfunction:
    return Eigenfunction(eta=eta0, pv_coefficient=eta0 / SQRT_PI, singular_coefficient=None,
                         kind=EigenKind.DISCRETE)


def degenerate_modes() -> tuple[Callable, Callable]:
    """The two omega1 = 0 solutions h1 = 1 and h2 = x1 - mu."""

    def h1(x1, mu):
        return np.ones(np.broadcast(np.asarray(x1), np.asarray(mu)).shape)

    def h2(x1, mu):
        return np.asarray(x1, dtype=float) - np.asarray(mu, dtype=float)

    return h1, h2


def discrete_solution(x1, mu, p: ProblemParams, f: Factorizer | None = None, eta0: complex | None = None):
    """Decaying discrete mode (1/sqrt pi) exp(-x1 z0/eta0) eta0/(eta0 - mu).

    At omega1 = 0 the discrete zeros sit at infinity and the pair of
    degenerate modes (h1, h2) evaluated at (x1, mu) is returned instead.
    """
    if p.omega1 == 0:
        h1, h2 = degenerate_modes()
        return h1(x1, mu), h2(x1, mu)
    if p.index != 1:
        raise WrongRegime("no discrete solutions when the index is 0")
    if eta0 is None:
        f = f if f is not None else Factorizer.build(p)
        eta0 = eta0_explicit(f)
    x1 = np.asarray(x1, dtype=float)
    if np.any(x1 < 0):
        raise ValueError("x1 must be >= 0")
    return np.exp(-x1 * p.z0 / eta0) * eta0 / (eta0 - np.asarray(mu)) / SQRT_PI


def kinetic_residual(h, dh_dx1, x1: float, mu: float, p: ProblemParams,
                     cfg: QuadratureConfig | None = None) -> complex:
    """mu dh/dx1 + z0 h - pi^{-1/2} int exp(-m^2) h(x1, m) dm at (x1, mu).

    The collision integral is done by adaptive quadrature on (-T, T).
    """
    cfg = cfg or DEFAULT_CONFIG
    coll = integrate(lambda m: np.exp(-m * m) * h(x1, m), -cfg.cutoff, cfg.cutoff, cfg) / SQRT_PI
    return complex(mu * dh_dx1(x1, mu) + p.z0 * h(x1, mu) - coll)
