import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import dawsn

from stokesrh.dispersion import (
    GUARD_BAND,
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
from stokesrh.errors import ConfigurationError, GuardBandError, OnRealAxis, TooClose
from stokesrh.riemann import critical_frequency

# Frozen from tests/oracles.py: QUADPACK on (-7, 7) of the defining integral.
LAMBDA0_AT_1_PLUS_1J = 0.09079650100217768 + 0.17108658129968912j


def richardson_limit(g, h0=0.02, levels=6):
    """Limit of g(h) as h -> 0+ for g(h) = g0 + c1 h + c2 h^2 + ..."""
    col = [g(h0 / 2**k) for k in range(levels)]
    for j in range(1, levels):
        col = [(2**j * col[k + 1] - col[k]) / (2**j - 1) for k in range(len(col) - 1)]
    return col[0]


# --- s -------------------------------------------------------------------------

def test_s_values():
    assert s(0.0) == 0.0
    assert s(-0.7) == -s(0.7)
    peak = s(1 / math.sqrt(2))
    assert peak == pytest.approx(math.sqrt(math.pi / 2) * math.exp(-0.5), rel=1e-15)
    mu = np.linspace(0.01, 5, 2001)
    assert np.all(s(mu) <= peak + 1e-15)


# --- lambda0 on the axis ---------------------------------------------------------

def test_lambda0_real_basic():
    assert lambda0_real(0.0) == 1.0
    assert abs(lambda0_real(0.924)) < 2e-3


@pytest.mark.parametrize("mu", [1e-4, 0.3, 0.924, 1.7, 3.0, 6.5, 25.0])
def test_lambda0_real_vs_dawson(mu):
    assert lambda0_real(mu) == pytest.approx(1 - 2 * mu * dawsn(mu), rel=1e-13, abs=1e-15)


def test_lambda0_real_asymptotic_at_two():
    mu = 2.0
    three = -1 / (2 * mu**2) - 3 / (4 * mu**4) - 15 / (8 * mu**6)
    next_term = 105 / (16 * mu**8)
    assert abs(lambda0_real(mu) - three) <= next_term


@settings(max_examples=50, deadline=None)
@given(st.floats(-30, 30))
def test_lambda0_real_even(mu):
    assert lambda0_real(mu) == lambda0_real(-mu)


# --- lambda0 off the axis --------------------------------------------------------

def test_lambda0_complex_even_example():
    z = 0.3 + 0.4j
    assert abs(lambda0_complex(z) - lambda0_complex(-z)) < 1e-12


def test_lambda0_complex_far_up():
    val = lambda0_complex(10j)
    assert val.real == pytest.approx(0.005, abs=1e-4)
    assert abs(val - (0.005 - 3 / (4 * 1e4))) < 2 / 1e6


def test_lambda0_complex_vs_direct_quadrature():
    assert abs(lambda0_complex(1 + 1j) - LAMBDA0_AT_1_PLUS_1J) < 1e-12


def test_lambda0_complex_rejects_axis():
    with pytest.raises(OnRealAxis):
        lambda0_complex(0.5 + 0j)
    with pytest.raises(OnRealAxis):
        lambda0_complex(np.array([1j, 2.0]))


off_axis = st.complex_numbers(max_magnitude=8).filter(lambda z: abs(z.imag) > 1e-3)


@settings(max_examples=100, deadline=None)
@given(off_axis)
def test_conjugate_symmetry(z):
    a = lambda0_complex(np.conj(z))
    b = np.conj(lambda0_complex(z))
    assert abs(a - b) <= 1e-12 * max(1, abs(b))


@settings(max_examples=100, deadline=None)
@given(off_axis)
def test_evenness(z):
    a, b = lambda0_complex(-z), lambda0_complex(z)
    assert abs(a - b) <= 1e-12 * max(1, abs(b))


# --- lambda and its boundary values ---------------------------------------------

def test_lambda_at_infinity():
    p = ProblemParams(0.3)
    assert abs(dispersion_function(1e4 * (1 + 1j), p) + 0.3j) < 1e-7


def test_lambda_without_frequency_is_lambda0():
    p = ProblemParams(0.0)
    z = np.array([0.4 + 0.2j, -3 - 1j])
    assert np.array_equal(dispersion_function(z, p), lambda0_complex(z))


def test_boundary_jump_and_mean():
    p = ProblemParams(0.3)
    mu = np.linspace(-4, 4, 81)
    b = lambda_boundary(mu, p)
    assert np.allclose(b.jump, 2j * s(mu), rtol=1e-15, atol=1e-16)
    assert np.allclose(b.mean, lambda0_real(mu) - 0.3j, atol=1e-15)
    b0 = lambda_boundary(0.0, p)
    assert b0.plus == b0.minus
    assert b0.plus == pytest.approx(1 - 0.3j, abs=1e-16)


@pytest.mark.parametrize("sign", [1, -1])
def test_boundary_vs_off_axis_limit(sign):
    p = ProblemParams(0.3)
    mu = 0.5
    limit = richardson_limit(lambda e: dispersion_function(mu + sign * 1j * e, p))
    b = lambda_boundary(mu, p)
    assert abs(limit - (b.plus if sign > 0 else b.minus)) < 1e-12


def test_off_axis_error_is_first_order():
    p = ProblemParams(0.3)
    b = lambda_boundary(0.5, p).plus
    e1 = abs(dispersion_function(0.5 + 1e-3j, p) - b)
    e2 = abs(dispersion_function(0.5 + 5e-4j, p) - b)
    assert e1 / e2 == pytest.approx(2.0, rel=0.01)


# --- Laurent tail -------------------------------------------------------------------

def test_laurent_tail_example():
    p = ProblemParams(0.3)
    z = 10 * np.exp(0.25j * math.pi)
    assert abs(dispersion_function(z, p) - laurent_tail(z, p)) <= 10 * abs(z) ** -8


def test_laurent_tail_arithmetic():
    val = laurent_tail(5j, ProblemParams(0.0))
    assert val == pytest.approx(0.02 - 0.0012 + 0.00012, abs=1e-15)


def test_laurent_tail_far():
    p = ProblemParams(0.3)
    assert abs(laurent_tail(1e8 + 1e8j, p) + 0.3j) < 1e-15


def test_laurent_tail_too_close():
    with pytest.raises(TooClose):
        laurent_tail(2 + 2j, ProblemParams(0.3))


# --- mu0 ----------------------------------------------------------------------------

def test_mu0():
    mu0 = find_mu0()
    assert mu0 == pytest.approx(0.924, abs=1e-3)
    assert abs(lambda0_real(mu0)) < 1e-12
    assert abs(lambda0_real(-mu0)) < 1e-12
    assert abs(1 - 2 * mu0 * dawsn(mu0)) < 1e-12


def test_mu0_bracket_is_monotone():
    mu = np.linspace(0.5, 1.5, 1001)
    lam = lambda0_real(mu)
    assert lam[0] > 0 > lam[-1]
    assert np.all(np.diff(lam) < 0)


# --- ProblemParams ------------------------------------------------------------------

def test_params():
    p = ProblemParams(0.3)
    assert p.z0 == 1 - 0.3j
    assert p.regime is Regime.INDEX_ONE and p.index == 1
    assert ProblemParams(1.0).regime is Regime.INDEX_ZERO


@pytest.mark.parametrize("w", [-0.1, float("nan"), float("inf")])
def test_params_reject(w):
    with pytest.raises(ConfigurationError):
        ProblemParams(w)


def test_guard_band():
    w_star = critical_frequency()
    with pytest.raises(GuardBandError):
        ProblemParams(w_star + 0.5 * GUARD_BAND)
    ProblemParams(w_star + 2 * GUARD_BAND)
