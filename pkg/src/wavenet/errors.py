"""Exception types raised across the package."""


class WavenetError(Exception):
    """Base class for all package errors."""


class NetworkError(WavenetError, ValueError):
    """Malformed network description (bad references, non-positive values, ...)."""


class SolverDegenerate(WavenetError):
    """The scattering system is singular (or numerically so) at wavenumber ``k``."""

    def __init__(self, k, condition):
        self.k = k
        self.condition = condition
        super().__init__(f"scattering system degenerate at k={k!r} (cond={condition:.3e})")


class ReflectionTooLarge(WavenetError):
    """Input-to-input block of an S-matrix is not negligible."""

    def __init__(self, norm, tol):
        self.norm = norm
        self.tol = tol
        super().__init__(f"reflection block max-norm {norm:.3e} exceeds tolerance {tol:.3e}")


class NotUnitary(WavenetError, ValueError):
    def __init__(self, residual, tol):
        self.residual = residual
        self.tol = tol
        super().__init__(f"matrix is not unitary: residual {residual:.3e} > {tol:.3e}")


class MeasurementTooShort(WavenetError):
    """Run does not cover enough of a period to resolve the phase advance."""


class Inconclusive(WavenetError):
    """Measured register values carry no usable period information."""


class OddPeriod(WavenetError):
    """Period is odd; retry with a different base."""

    def __init__(self, N, a, r):
        self.N, self.a, self.r = N, a, r
        super().__init__(f"period r={r} of a={a} mod {N} is odd; choose another base")


class TrivialFactor(WavenetError):
    """Both gcd(a^(r/2) +/- 1, N) are trivial; retry with a different base."""

    def __init__(self, N, a, r):
        self.N, self.a, self.r = N, a, r
        super().__init__(f"a={a}, r={r} only gives trivial factors of {N}; choose another base")
