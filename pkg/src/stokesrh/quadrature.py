"""Adaptive quadrature on finite intervals, the half-line and across a pole.

Integrands are *vectorised*: ``f(x)`` receives a 1-D array of nodes of length
``n`` and returns an array whose leading axis has length ``n``.  Trailing axes
are carried through, so one adaptive pass can integrate a whole family of
integrands (e.g. a Cauchy kernel for many evaluation points).  The error norm
is the maximum over that family.

All routines are pure functions of their arguments.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import ConfigurationError, NonConvergence, PoleOutOfRange

# Gauss-Kronrod 7/15 pair (QUADPACK qk15 abscissae and weights).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full symmetric rule on [-1, 1].
KRONROD_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod nodes (x_1, x_3, x_5, x_7=0, ...).
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[[9, 11, 13]] = _WG[2::-1]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and truncation for every integral in the package.

    ``cutoff`` is the point T at which half-line integrals are truncated.  The
    integrands met here are bounded by a multiple of sqrt(pi) t exp(-t^2), so
    ``truncation_ok`` reports whether that envelope at T is below ``abs_tol``.
    It is reported rather than enforced: short finite intervals are legitimate
    for :func:`integrate` and :func:`cauchy_pv`.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    cutoff: float = 7.0
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ConfigurationError("tolerances must be positive")
        if not self.cutoff > 0:
            raise ConfigurationError("cutoff must be positive")
        if int(self.max_subdivisions) != self.max_subdivisions or self.max_subdivisions < 1:
            raise ConfigurationError("max_subdivisions must be a positive integer")

    @property
    def envelope_at_cutoff(self) -> float:
        T = self.cutoff
        return math.sqrt(math.pi) * T * math.exp(-T * T)

    @property
    def truncation_ok(self) -> bool:
        return self.envelope_at_cutoff < self.abs_tol

    def tightened(self, factor: float = 100.0, subdivisions: int | None = None) -> "QuadratureConfig":
        """Copy with both tolerances divided by ``factor``."""
        return replace(
            self,
            abs_tol=self.abs_tol / factor,
            rel_tol=self.rel_tol / factor,
            max_subdivisions=subdivisions or 4 * self.max_subdivisions,
        )


DEFAULT_CONFIG = QuadratureConfig()


class QuadResult(NamedTuple):
    value: np.ndarray | complex | float
    abs_error: float
    n_intervals: int


def _gk15(f, a: float, b: float):
    """Kronrod value and |K - G| error for one or several intervals.

    ``a``/``b`` are 1-D arrays of interval ends; f is called once.
    """
    a = np.atleast_1d(a)
    b = np.atleast_1d(b)
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = (mid[:, None] + half[:, None] * KRONROD_NODES[None, :]).ravel()
    y = np.asarray(f(x))
    if y.shape[:1] != x.shape:
        raise ValueError("integrand must return an array whose first axis matches the nodes")
    y = y.reshape((a.size, 15) + y.shape[1:])
    scale = half.reshape((a.size,) + (1,) * (y.ndim - 2))
    kron = np.tensordot(KRONROD_WEIGHTS, y, axes=([0], [1])) * scale
    gauss = np.tensordot(GAUSS_WEIGHTS, y, axes=([0], [1])) * scale
    diff = np.abs(kron - gauss)
    err = diff.reshape(a.size, -1).max(axis=1)
    return kron, err


def _norm(v) -> float:
    return float(np.max(np.abs(v))) if np.size(v) else 0.0


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    cfg: QuadratureConfig | None = None,
    *,
    points: Sequence[float] = (),
    full_output: bool = False,
):
    """Globally adaptive Gauss-Kronrod integral of ``f`` over ``[a, b]``.

    The interval with the largest error estimate is bisected until the summed
    estimate drops below ``max(abs_tol, rel_tol * |result|)``.  ``points`` are
    interior breakpoints used for the initial partition.

    Returns the value, or a :class:`QuadResult` if ``full_output``.  The
    returned error estimate is the smallest one met during refinement, so a
    larger ``max_subdivisions`` can never report a larger error.

    Raises
    ------
    NonConvergence
        if ``max_subdivisions`` intervals are in play and the tolerance is
        still not met.  The best estimate is attached to the exception.
    """
    cfg = cfg or DEFAULT_CONFIG
    a = float(a)
    b = float(b)
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    edges = np.unique(np.concatenate([[a, b], [p for p in points if a < p < b]]))
    lo, hi = edges[:-1], edges[1:]
    vals, errs = _gk15(f, lo, hi)

    heap = []
    total = 0
    for k in range(lo.size):
        heapq.heappush(heap, (-errs[k], k, lo[k], hi[k], vals[k]))
        total = total + vals[k]
    counter = lo.size
    err_total = float(errs.sum())
    best = (total, err_total)

    while True:
        tol = max(cfg.abs_tol, cfg.rel_tol * _norm(total))
        if err_total <= tol:
            break
        if len(heap) >= cfg.max_subdivisions:
            value, err = best
            raise NonConvergence(
                f"adaptive quadrature on [{a}, {b}] did not reach {tol:.3g} "
                f"after {len(heap)} subintervals (estimate {err:.3g})",
                value=value,
                abs_error=err,
            )
        neg_err, _, x0, x1, v = heapq.heappop(heap)
        xm = 0.5 * (x0 + x1)
        (v0, v1), (e0, e1) = _gk15(f, np.array([x0, xm]), np.array([xm, x1]))
        heapq.heappush(heap, (-e0, counter, x0, xm, v0))
        heapq.heappush(heap, (-e1, counter + 1, xm, x1, v1))
        counter += 2
        total = total - v + v0 + v1
        err_total = err_total + neg_err + e0 + e1
        if err_total < best[1]:
            best = (total, err_total)

    # Re-sum from the heap to shed accumulated update round-off.
    total = sum(item[4] for item in sorted(heap, key=lambda it: it[2]))
    err_total = sum(-item[0] for item in heap)
    if err_total < best[1]:
        best = (total, err_total)
    value, err = best
    if full_output:
        return QuadResult(value, float(err), len(heap))
    return value


def integrate_semi_infinite(
    f: Callable[[np.ndarray], np.ndarray],
    cfg: QuadratureConfig | None = None,
    *,
    points: Sequence[float] = (1.0,),
    full_output: bool = False,
):
    """Integral of ``f`` over (0, inf), truncated at ``cfg.cutoff``.

    If ``|f(t)| <= C t exp(-t^2)`` beyond the cutoff T, the dropped tail is at
    most ``C exp(-T^2) / 2``.  The default breakpoint at t = 1 keeps the
    adaptivity near the origin independent of the decaying tail.
    """
    cfg = cfg or DEFAULT_CONFIG
    return integrate(f, 0.0, cfg.cutoff, cfg, points=points, full_output=full_output)


def truncation_bound(C: float, cutoff: float) -> float:
    """Tail bound C exp(-T^2)/2 for integrands under C t exp(-t^2)."""
    return 0.5 * C * math.exp(-cutoff * cutoff)


def cauchy_pv(
    f: Callable[[np.ndarray], np.ndarray],
    pole,
    cfg: QuadratureConfig | None = None,
    *,
    points: Sequence[float] = (1.0,),
    full_output: bool = False,
):
    """Principal value of the integral of f(t)/(t - pole) over (0, T).

    Computed by singularity subtraction::

        int_0^T [f(t) - f(pole)]/(t - pole) dt + f(pole) ln((T - pole)/pole)

    where the subtracted quotient is filled with f'(pole) (central difference)
    where a node falls on the pole.  ``pole`` may be a 1-D array; ``f`` must
    then return one value per node (no trailing axes) and the result has the
    shape of ``pole``.
    """
    cfg = cfg or DEFAULT_CONFIG
    T = cfg.cutoff
    poles = np.asarray(pole, dtype=float)
    scalar = poles.ndim == 0
    poles = np.atleast_1d(poles)
    if np.any(poles <= 0) or np.any(poles >= T):
        raise PoleOutOfRange(f"pole must lie in (0, {T}); got {pole}")

    h = 1e-6 * np.maximum(1.0, poles)
    left = np.where(poles - h > 0, poles - h, poles)
    fp, fl, fr = (np.asarray(f(x)) for x in (poles, left, poles + h))
    deriv = (fr - fl) / (poles + h - left)
    near = 1e-8 * np.maximum(1.0, poles)

    def subtracted(t):
        ft = np.asarray(f(t))
        d = t[:, None] - poles[None, :]
        close = np.abs(d) < near[None, :]
        safe = np.where(close, 1.0, d)
        q = (ft[:, None] - fp[None, :]) / safe
        return np.where(close, deriv[None, :], q)

    res = integrate(subtracted, 0.0, T, cfg, points=points, full_output=True)
    value = res.value + fp * np.log((T - poles) / poles)
    if scalar:
        value = value[0]
    if full_output:
        return QuadResult(value, res.abs_error, res.n_intervals)
    return value
