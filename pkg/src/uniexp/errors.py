"""Exception and warning types raised across the package."""


class UniexpError(ValueError):
    """Base class for all errors raised by uniexp."""


class SpuriousPoleError(UniexpError):
    """The barycentric denominator collapsed at a real evaluation point."""


class PoleHitError(UniexpError):
    """Evaluation point coincides with a pole."""


class DegeneratePoleError(UniexpError):
    """A pole lies on the imaginary axis, so the phase function is undefined."""


class DegenerateNullSpaceError(UniexpError):
    """Pole extraction found fewer finite poles than the detected degree."""


class CoincidentNodeError(UniexpError):
    """Two nodes that must be distinct coincide."""


class RankDeficiencyError(UniexpError):
    """The Loewner null space has dimension larger than one."""


class InfeasibleFrequencyError(UniexpError):
    """omega lies outside the window (0, (n+1)*pi)."""


class IntervalMismatchError(UniexpError):
    """Frequency does not match the half-length of the target interval."""


class SignChangeError(UniexpError):
    """The phase error does not change sign across a claimed node."""


class ConvergenceError(UniexpError):
    """An iterative solver ran out of iterations.

    The best iterate found so far is available as ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class BranchWrapWarning(UserWarning):
    """Adjacent phase-error samples jumped by more than pi."""


class ZeroCountWarning(UserWarning):
    """Number of detected phase-error zeros differs from 2n+1."""
