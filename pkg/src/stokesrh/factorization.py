"""Factorizing function X(z) of the homogeneous Riemann problem X^+ = G X^-.

The log-density on the positive ray is

    rho(u) = ln|G(u)| + i (theta(u) - 2 pi kappa),

V(z) is its Cauchy integral (1/2 pi i) int rho(u)/(u - z) du, and
X(z) = exp(V(z)) / z for kappa = 1 or exp(V(z)) for kappa = 0.  On the cut
X(mu) = exp(V(mu)) / mu (resp. exp(V(mu))) with V(mu) the principal value, and
X^{+-} = X(mu) exp(+-Theta), Theta = rho/2.

Besides evaluation, this module checks every integral representation of X and
1/X as a relative residual between two independent evaluation paths.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dispersion import BoundaryPair, ProblemParams, Regime, lambda_boundary, s
from .errors import IndexMismatch, OnCut, WrongRegime, ZeroArgument
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, cauchy_pv, integrate_semi_infinite
from .riemann import (
    TWO_PI,
    AngleProfile,
    default_grid,
    log_abs_g,
    theta_branch,
    theta_unwrapped,
    zero_crossing_frequency,
)

#: Off-cut evaluations closer than this to the ray are refused.
NEAR_CUT = 1e-4


@dataclass(frozen=True)
class Factorizer:
    """Everything needed to evaluate V and X for one frequency.

    Construction checks that the winding number measured on ``profile``
    matches the regime assigned to ``params``.
    """

    params: ProblemParams
    profile: AngleProfile = field(repr=False)
    cfg: QuadratureConfig = DEFAULT_CONFIG

    def __post_init__(self):
        if self.profile.index != self.params.index:
            raise IndexMismatch(
                f"omega1={self.params.omega1}: regime {self.params.regime.name} expects "
                f"index {self.params.index} but arg G winds {self.profile.index} time(s); "
                f"the winding changes at s(mu0) = {zero_crossing_frequency():.6f}"
            )

    @classmethod
    def build(cls, omega1, cfg: QuadratureConfig | None = None, grid=None) -> "Factorizer":
        p = omega1 if isinstance(omega1, ProblemParams) else ProblemParams(omega1)
        cfg = cfg or DEFAULT_CONFIG
        if grid is None:
            grid = default_grid(cfg.cutoff)
        return cls(p, theta_unwrapped(grid, p), cfg)

    @property
    def index(self) -> int:
        return self.params.index

    @property
    def omega1(self) -> float:
        return self.params.omega1


def log_jump(u, f: Factorizer):
    """rho(u) = ln|G| + i(theta - 2 pi kappa); rho(0+) = -2 pi i kappa, rho(inf) = 0."""
    p = f.params
    return log_abs_g(u, p) + 1j * (theta_branch(u, p) - TWO_PI * p.index)


def half_log_jump(mu, f: Factorizer):
    """Theta(mu) = rho(mu)/2; X^+/X^- = exp(2 Theta) = G."""
    return 0.5 * log_jump(mu, f)


def _check_off_cut(z: np.ndarray, cutoff: float):
    on_ray = (z.imag == 0) & (z.real >= 0)
    if np.any(on_ray):
        raise OnCut("z lies on the cut [0, inf); use the boundary-value functions")
    near = (np.abs(z.imag) < NEAR_CUT) & (z.real > 0) & (z.real < cutoff)
    if np.any(near):
        raise OnCut(f"|Im z| < {NEAR_CUT} next to the cut; use the boundary-value functions")


def _shaped(values, z: np.ndarray):
    out = np.asarray(values).reshape(z.shape)
    return out[()] if out.ndim == 0 else out


def cauchy_transform(density, z, cfg: QuadratureConfig):
    """int_0^T density(u)/(u - z) du for an array of off-ray points z."""
    z = np.asarray(z, dtype=complex)
    zf = z.ravel()

    def integrand(u):
        return np.asarray(density(u))[:, None] / (u[:, None] - zf[None, :])

    return _shaped(integrate_semi_infinite(integrand, cfg), z)


def v_of_z(z, f: Factorizer, cfg: QuadratureConfig | None = None):
    """V(z) off the cut (vectorised over z)."""
    z = np.asarray(z, dtype=complex)
    _check_off_cut(z, f.cfg.cutoff)
    return cauchy_transform(lambda u: log_jump(u, f), z, cfg or f.cfg) / (2j * math.pi)


def v_on_cut(mu, f: Factorizer, cfg: QuadratureConfig | None = None):
    """Principal value V(mu) = (1/2 pi i) PV int rho(t)/(t - mu) dt, 0 < mu < T."""
    return cauchy_pv(lambda t: log_jump(t, f), mu, cfg or f.cfg) / (2j * math.pi)


def v_boundary(mu, f: Factorizer) -> BoundaryPair:
    v = v_on_cut(mu, f)
    th = half_log_jump(mu, f)
    return BoundaryPair(plus=v + th, minus=v - th)


def _x_from_v(v, z, index):
    return np.exp(v) / z if index == 1 else np.exp(v)


def x_of_z(z, f: Factorizer, cfg: QuadratureConfig | None = None):
    """X(z) off the cut: exp(V)/z (index 1) or exp(V) (index 0)."""
    z = np.asarray(z, dtype=complex)
    if f.index == 1 and np.any(z == 0):
        raise ZeroArgument("X(z) = exp(V)/z is not evaluated at z = 0")
    v = v_of_z(z, f, cfg)
    return _x_from_v(v, z, f.index)


def x_on_cut(mu, f: Factorizer):
    """X(mu) on the cut, built from the principal value of V."""
    mu = np.asarray(mu, dtype=float)
    return _x_from_v(v_on_cut(mu, f), mu, f.index)


def x_boundary(mu, f: Factorizer) -> BoundaryPair:
    """X^{+-}(mu) = X(mu) exp(+-Theta(mu))."""
    x = x_on_cut(mu, f)
    th = half_log_jump(mu, f)
    return BoundaryPair(plus=x * np.exp(th), minus=x * np.exp(-th))


def v1_constant(f: Factorizer) -> complex:
    """V1 = -(1/2 pi i) int_0^inf rho(t) dt, so that V(z) = V1/z + O(z^-2).

    rho is the same density as in V (the continuous branch of ln G with
    theta shifted by -2 pi when the index is 1).
    """
    return complex(-integrate_semi_infinite(lambda t: log_jump(t, f), f.cfg) / (2j * math.pi))


def _rel(lhs, rhs) -> float:
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    return float(np.max(np.abs(lhs - rhs) / np.abs(lhs)))


# --- off-cut representations ---------------------------------------------------

def jump_representation(z, f: Factorizer):
    """X(z) rebuilt from the boundary jump: (1/2 pi i) int (X^+ - X^-)/(u - z) du,
    plus 1 when the index is 0."""

    def density(u):
        return x_boundary(u, f).jump

    out = cauchy_transform(density, z, f.cfg) / (2j * math.pi)
    return out + 1 if f.index == 0 else out


def density_representation(z, f: Factorizer):
    """X(z) rebuilt as (1/pi) int s X^+/lambda^+ du/(u - z), plus 1 for index 0."""

    def density(u):
        return s(u) * x_boundary(u, f).plus / lambda_boundary(u, f.params).plus

    out = cauchy_transform(density, z, f.cfg) / math.pi
    return out + 1 if f.index == 0 else out


def verify_jump_representation(z, f: Factorizer) -> float:
    """Relative residual |X(z) - jump representation| / |X(z)| (max over z)."""
    return _rel(x_of_z(z, f), jump_representation(z, f))


def verify_density_representation(z, f: Factorizer) -> float:
    return _rel(x_of_z(z, f), density_representation(z, f))


def normalization_integral(f: Factorizer) -> complex:
    """(1/pi) int s X^+/lambda^+ du, which equals -1 when the index is 1."""

    def density(u):
        return s(u) * x_boundary(u, f).plus / lambda_boundary(u, f.params).plus

    return complex(integrate_semi_infinite(density, f.cfg) / math.pi)


def inverse_representation(z, f: Factorizer):
    """Right-hand side for 1/X off the cut, from the jump of 1/X.

    index 1:  1/X - z + V1 = -(1/pi i) int sinh Theta / (X (t - z)) dt
    index 0:  1/X          = 1 - (1/pi i) int sinh Theta / (X (t - z)) dt
    """

    def density(t):
        return np.sinh(half_log_jump(t, f)) / x_on_cut(t, f)

    out = -cauchy_transform(density, z, f.cfg) / (1j * math.pi)
    return out + 1 if f.index == 0 else out


def inverse_lhs(z, f: Factorizer, v1: complex | None = None):
    z = np.asarray(z, dtype=complex)
    inv = 1.0 / x_of_z(z, f)
    if f.index == 0:
        return inv
    v1 = v1_constant(f) if v1 is None else v1
    return inv - z + v1


def verify_inverse_representation(z, f: Factorizer) -> float:
    return _rel(inverse_lhs(z, f), inverse_representation(z, f))


def limit_residual(z, f: Factorizer) -> float:
    """|z X(z) - 1| for index 1, |X(z) - 1| for index 0 (max over z)."""
    z = np.asarray(z, dtype=complex)
    x = x_of_z(z, f)
    lead = z * x if f.index == 1 else x
    return float(np.max(np.abs(lead - 1)))


def decay_constant(f: Factorizer, radii=(1e1, 1e2, 1e3), arg: float = 0.75 * math.pi) -> float:
    """Smallest C with limit_residual <= C/|z| over the sampled radii."""
    return max(limit_residual(r * np.exp(1j * arg), f) * r for r in radii)


# --- on-cut representations ----------------------------------------------------

def on_cut_representation(mu, f: Factorizer):
    """Principal-value reconstruction of X(mu) cosh Theta(mu).

    index 1: (1/pi i) PV int X sinh Theta/(t - mu) dt
    index 0: 1 + (1/pi) PV int s X^+/lambda^+ /(t - mu) dt
    """
    if f.index == 1:
        def density(t):
            return x_on_cut(t, f) * np.sinh(half_log_jump(t, f))

        return cauchy_pv(density, mu, f.cfg) / (1j * math.pi)

    def density(t):
        return s(t) * x_boundary(t, f).plus / lambda_boundary(t, f.params).plus

    return 1 + cauchy_pv(density, mu, f.cfg) / math.pi


def verify_on_cut_representation(mu, f: Factorizer) -> float:
    lhs = x_on_cut(mu, f) * np.cosh(half_log_jump(mu, f))
    return _rel(lhs, on_cut_representation(mu, f))


def inverse_on_cut_representation(mu, f: Factorizer):
    """Principal-value form for cosh Theta / X on the cut.

    index 1: cosh Theta/X - mu + V1 = -(1/pi i) PV int sinh Theta/(X (t - mu)) dt
    index 0: cosh Theta/X           = 1 - (1/pi i) PV int sinh Theta/(X (t - mu)) dt
    """

    def density(t):
        return np.sinh(half_log_jump(t, f)) / x_on_cut(t, f)

    out = -cauchy_pv(density, mu, f.cfg) / (1j * math.pi)
    return out + 1 if f.index == 0 else out


def verify_inverse_on_cut(mu, f: Factorizer) -> float:
    mu = np.asarray(mu, dtype=float)
    lhs = np.cosh(half_log_jump(mu, f)) / x_on_cut(mu, f)
    if f.index == 1:
        lhs = lhs - mu + v1_constant(f)
    return _rel(lhs, inverse_on_cut_representation(mu, f))


def verify_representations_index0(z, mu, f: Factorizer) -> dict[str, float]:
    """All four index-zero identities: two for X off the cut, one for 1/X off
    the cut, and the principal-value forms on the cut."""
    if f.index != 0:
        raise WrongRegime("index-zero representations need kappa = 0")
    return {
        "jump_representation": verify_jump_representation(z, f),
        "density_representation": verify_density_representation(z, f),
        "inverse_representation": verify_inverse_representation(z, f),
        "inverse_on_cut": verify_inverse_on_cut(mu, f),
        "on_cut_representation": verify_on_cut_representation(mu, f),
    }
