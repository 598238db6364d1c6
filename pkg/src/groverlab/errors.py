"""Exception types raised by the groverlab numerical routines."""


class GroverLabError(Exception):
    """Base class for all library errors."""


class DegenerateSpectrum(GroverLabError, ArithmeticError):
    """The kernel eigenvalues coincide, so the spectral decomposition is unusable.

    Callers should fall back to iterated matrix application.
    """


class ZeroPhaseGap(DegenerateSpectrum):
    """The eigenphase gap vanishes: the kernel never rotates the state."""


class DivergentSteps(GroverLabError, ArithmeticError):
    """The large-N step estimate diverges (cos(t/2) ~ 0)."""


class NoRoot(GroverLabError, ValueError):
    """No exact-alignment parameter exists on the requested bracket."""


class LengthMismatch(GroverLabError, ValueError):
    pass


class DimensionMismatch(GroverLabError, ValueError):
    pass


class RangeError(GroverLabError, IndexError):
    pass
