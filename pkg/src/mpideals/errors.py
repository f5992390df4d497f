"""Exception hierarchy.

Two families matter for the command line tool: MathError covers failures of a
mathematical precondition or certificate (exit status 1), InputError covers
malformed files and configuration (exit status 2).
"""


class MPIdealsError(Exception):
    """Base class for all package errors."""


class MathError(MPIdealsError):
    """A mathematical precondition or certificate failed."""


class InputError(MPIdealsError):
    """Malformed input file, unknown name, or invalid configuration."""


# -- linear algebra ---------------------------------------------------------

class NonFinite(MathError):
    """NaN or Inf entry encountered."""


class NonHermitian(MathError):
    """Matrix or element fails the self-adjointness check."""


class Singular(MathError):
    """Smallest singular value below the invertibility tolerance."""


class DimensionMismatch(MathError):
    """Operands have incompatible shapes or dimension tables."""


class ConvergenceFailure(MathError):
    """Iterative kernel failed to reach its tolerance."""


# -- spectral calculus ------------------------------------------------------

class NotIsolated(MathError):
    """Spectral cluster is not separated from the rest of the spectrum."""


class NotPositive(MathError):
    """Element is not positive semidefinite within tolerance."""


class NotInIdeal(MathError):
    """Element does not belong to the stated ideal."""


class ZeroElement(MathError):
    """Operation undefined for the zero element."""


class NotProjection(MathError):
    """Element is not a self-adjoint idempotent within tolerance."""


class UndefinedOnCluster(MathError):
    """Scalar function could not be evaluated on a spectral cluster."""


# -- Moore-Penrose inversion and lifting -------------------------------------

class NotMPInvertible(MathError):
    """Zero is not isolated in the spectrum of a*a at the gap resolution."""


class NotInSubalgebra(MathError):
    """Element lies outside the generated subalgebra at tolerance."""


class NotCosetInvertible(MathError):
    """Coset modulo the ideal is not invertible."""


class NotCosetMPInvertible(MathError):
    """Coset modulo the ideal is not Moore-Penrose invertible."""


class NotProjectionCoset(MathError):
    """Coset modulo the ideal is not a projection."""


class PeelNotInIdeal(MathError):
    """A peeled spectral component failed the ideal membership check."""


class DegenerateSpectrum(MathError):
    """Spectral cluster sits on the 1/2 classification knife edge."""


class PreconditionFailed(MathError):
    """A stated operation precondition does not hold; message names it."""


# -- grid model ---------------------------------------------------------------

class VanishingValue(MathError):
    """Grid function vanishes where a nonvanishing value is required."""


class InsufficientResolution(MathError):
    """Sampling too coarse for the requested topological computation."""


class MixedBoundary(MathError):
    """Boundary values cluster near both 0 and 1."""


class ContinuityViolation(MathError):
    """Adjacent samples jump more than the declared continuity bound."""


# -- input handling -----------------------------------------------------------

class ParseError(InputError):
    """Instance file does not match the documented schema."""


class UnknownSuite(InputError):
    """Suite name not recognized."""


class UnknownOperation(InputError):
    """Query operation name not recognized."""


class ConfigInvalid(InputError):
    """Suite or tolerance configuration is invalid."""
