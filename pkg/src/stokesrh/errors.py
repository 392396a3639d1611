"""Exception hierarchy.

Configuration and regime misuse derive from ``ConfigurationError`` (a
``ValueError``); failures of the numerics themselves derive from
``NumericalFailure``.  The CLI maps the two families to exit codes 2 and 3.
"""


class StokesRHError(Exception):
    pass


class ConfigurationError(StokesRHError, ValueError):
    pass


class NumericalFailure(StokesRHError, ArithmeticError):
    pass


# --- quadrature -------------------------------------------------------------

class NonConvergence(NumericalFailure):
    """Adaptive quadrature ran out of subdivisions.

    The best estimate reached is kept on the exception so callers can decide
    whether it is good enough.
    """

    def __init__(self, message, value=None, abs_error=None):
        super().__init__(message)
        self.value = value
        self.abs_error = abs_error


class PoleOutOfRange(ConfigurationError):
    pass


# --- dispersion ---------------------------------------------------------------

class OnRealAxis(ConfigurationError):
    pass


class TooClose(ConfigurationError):
    pass


class GuardBandError(ConfigurationError):
    pass


# --- riemann ------------------------------------------------------------------

class DegenerateDenominator(NumericalFailure):
    pass


class GridTooCoarse(NumericalFailure):
    pass


class WrongRegime(ConfigurationError):
    pass


class IndexMismatch(WrongRegime):
    """The winding number measured on the real axis disagrees with the
    regime assigned from the critical frequency."""


# --- factorization ------------------------------------------------------------

class OnCut(ConfigurationError):
    pass


class ZeroArgument(ConfigurationError):
    pass


# --- spectrum -----------------------------------------------------------------

class BranchAmbiguity(NumericalFailure):
    pass


class NoConvergence(NumericalFailure):
    """Newton iteration did not reach the residual target."""
