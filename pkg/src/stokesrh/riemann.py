"""Coefficient G = lambda^+/lambda^- of the Riemann problem, its argument and index.

With L = lambda0(mu), S = s(mu), w = omega1 one has

    G = (L^2 + w^2 - S^2 + 2 i L S) / (L^2 + (S + w)^2),

so arg G follows from the numerator alone and
ln|G| = 1/2 log1p(-4 S w / (L^2 + (S + w)^2)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar

from .dispersion import ProblemParams, Regime, find_mu0, lambda0_real, lambda_boundary, s
from .errors import DegenerateDenominator, GridTooCoarse, WrongRegime

TWO_PI = 2.0 * math.pi

#: Largest phase increment accepted between neighbouring grid nodes.
MAX_PHASE_STEP = 0.5 * math.pi


def default_grid(cutoff: float = 7.0, n: int = 4000) -> np.ndarray:
    return np.logspace(-6, math.log10(cutoff), n)


def coefficient_g(mu, p: ProblemParams):
    """G(mu) = lambda^+(mu) / lambda^-(mu) by direct complex division."""
    b = lambda_boundary(mu, p)
    if np.any(np.abs(b.minus) < 1e-300):
        raise DegenerateDenominator("lambda^- vanishes; G is undefined")
    return b.plus / b.minus


def _parts(mu, p: ProblemParams):
    L = lambda0_real(mu)
    S = s(mu)
    w = p.omega1
    return L, S, L * L + w * w - S * S, 2.0 * L * S


def log_abs_g(mu, p: ProblemParams):
    L, S, _, _ = _parts(mu, p)
    w = p.omega1
    return 0.5 * np.log1p(-4.0 * S * w / (L * L + (S + w) ** 2))


def _arccot(num, den):
    """arccot(num/den) with range (0, pi), evaluated without forming the ratio.

    For den == 0 the one-sided limit from den > 0 is returned, which is the
    continuous choice at the lambda0 = 0 seam.
    """
    sgn = np.where(den < 0, -1.0, 1.0)
    return np.arctan2(np.abs(den), sgn * num)


def theta_branch(mu, p: ProblemParams):
    """arg G from the closed-form branch expressions.

    IndexOne: arccot(ratio) in (0, pi), plus pi where lambda0 <= 0.
    IndexZero: arctan(1/ratio) in (-pi/2, pi/2).
    ``ratio = (lambda0^2 + w^2 - s^2) / (2 lambda0 s)``.
    """
    L, _, num, den = _parts(mu, p)
    if p.regime is Regime.INDEX_ONE:
        theta = _arccot(num, den)
        # At L == 0 exactly the arccot limit is already pi; no shift there.
        return np.where(L < 0, theta + math.pi, theta)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.arctan(den / num)


@dataclass(frozen=True)
class AngleProfile:
    grid: np.ndarray
    theta: np.ndarray
    ln_mod_g: np.ndarray
    index: int

    @property
    def total_increment(self) -> float:
        return float(self.theta[-1] - 0.0)


def theta_unwrapped(grid, p: ProblemParams, max_step: float = MAX_PHASE_STEP) -> AngleProfile:
    """Continuous arg G along ``grid`` starting from theta(0) = 0.

    Each increment is the principal argument of G(mu_k+1)/G(mu_k); the first
    node is joined to mu = 0, where G = 1.  An increment beyond ``max_step``
    means the grid cannot resolve the phase and raises GridTooCoarse.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2 or np.any(np.diff(grid) <= 0) or grid[0] <= 0:
        raise ValueError("grid must be a strictly increasing positive 1-D array")
    _, _, num, den = _parts(grid, p)
    # arg of the numerator equals arg G; normalise to avoid under/overflow.
    q = (num + 1j * den) / np.hypot(num, den)
    steps = np.angle(np.concatenate([[q[0]], q[1:] / q[:-1]]))
    worst = int(np.argmax(np.abs(steps)))
    if abs(steps[worst]) > max_step:
        raise GridTooCoarse(
            f"phase step {steps[worst]:.3f} rad near mu={grid[worst]:.6g} exceeds {max_step:.3f}"
        )
    theta = np.cumsum(steps)
    index = int(round(theta[-1] / TWO_PI))
    return AngleProfile(grid=grid, theta=theta, ln_mod_g=log_abs_g(grid, p), index=index)


def branch_index(p: ProblemParams, cutoff: float = 7.0) -> int:
    """Winding number read off the closed-form branch: theta(cutoff)/2pi."""
    th = theta_branch(np.array([1e-8, cutoff]), p)
    return int(round((th[1] - th[0]) / TWO_PI))


def zeta(mu, p: ProblemParams):
    """Shifted angle theta - 2pi, used as the phase density when the index is 1."""
    if p.regime is not Regime.INDEX_ONE:
        raise WrongRegime("zeta is only defined in the index-one regime")
    return theta_branch(mu, p) - TWO_PI


def _maximand(mu):
    d = s(mu) ** 2 - lambda0_real(mu) ** 2
    return np.sqrt(np.maximum(d, 0.0))


@dataclass(frozen=True)
class CriticalPoint:
    omega1: float
    mu: float
    window: tuple[float, float]


@lru_cache(maxsize=None)
def critical_point(n_scan: int = 10_000, cutoff: float = 7.0) -> CriticalPoint:
    """Maximum of sqrt(s^2 - lambda0^2) over mu > 0, with its location.

    Coarse scan on (0, cutoff] followed by golden-section refinement.
    ``window`` is the feasible interval (s^2 >= lambda0^2) around the argmax.
    """
    mu = np.linspace(cutoff / n_scan, cutoff, n_scan)
    vals = _maximand(mu)
    k = int(np.argmax(vals))
    lo = mu[max(k - 1, 0)]
    hi = mu[min(k + 1, n_scan - 1)]
    res = minimize_scalar(
        lambda m: -float(_maximand(m)),
        bracket=(lo, mu[k], hi),
        method="golden",
        options={"xtol": 1e-10},
    )
    feasible = vals > 0
    left = k
    while left > 0 and feasible[left - 1]:
        left -= 1
    right = k
    while right < n_scan - 1 and feasible[right + 1]:
        right += 1
    return CriticalPoint(omega1=-float(res.fun), mu=float(res.x), window=(mu[left], mu[right]))


def critical_frequency() -> float:
    """omega1* = max over mu of sqrt(s^2 - lambda0^2), about 0.733."""
    return critical_point().omega1


def zero_crossing_frequency() -> float:
    """Frequency at which lambda^+ vanishes on the axis: s(mu0), about 0.6973.

    G passes through the origin here, so this is where the winding number of
    G actually changes.  It lies below :func:`critical_frequency`; between the
    two the measured index is 0 although the frequency is sub-critical.
    """
    return float(s(find_mu0()))
