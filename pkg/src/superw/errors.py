"""Exception types shared across the package."""


class SuperwError(Exception):
    """Base class for all package-specific errors."""


class NotAdmissibleAtP(SuperwError):
    """A rational coefficient has a denominator divisible by p; the prime
    must be excluded for the current computation."""


class BadPrime(SuperwError):
    """The prime violates the catalog restrictions (p = 2, or p | m-n for sl)."""


class DegenerateForm(SuperwError):
    """The invariant bilinear form is degenerate; construction refused."""


class AmbientMismatch(SuperwError):
    """Subspace operation on subspaces of different ambient spaces."""


class NoSolution(SuperwError):
    """Linear system is inconsistent."""


class NotNilpotent(SuperwError):
    """Element expected to be ad-nilpotent is not."""


class NoTriple(SuperwError):
    """No sl2-triple through the given nilpotent (inconsistent linear system)."""


class NonIntegerEigenvalue(SuperwError):
    """ad h is not diagonalizable with integer eigenvalues."""


class ParityViolation(SuperwError):
    """d1 and dim g(-1)_odd disagree mod 2; internal-consistency failure."""


class DegeneratePairing(SuperwError):
    """The form <.,.> on g(-1) is degenerate or not split over the field."""


class InvalidCharacter(SuperwError):
    """A candidate one-dimensional character violates a required identity."""


class CharacterMismatch(SuperwError):
    """eta does not lie in chi + (m-perp)_even."""


class DimensionMismatch(SuperwError):
    """A computed dimension disagrees with its predicted value."""


class ExtractionFailure(SuperwError):
    """No invariant with the prescribed leading term exists."""


class TruncationTooSmall(SuperwError):
    """The degree cap is too small for the requested computation."""


class CapExceeded(SuperwError):
    """Module dimension exceeds the configured splitting cap."""


class NotSimple(SuperwError):
    """A proper graded two-sided ideal exists; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotSimpleInput(SuperwError):
    """Operation requires a simple module."""


class UnrecognizedSummand(SuperwError):
    """A Levi summand matches no catalog fingerprint."""


class NoGrading(SuperwError):
    """Kazhdan degree requested but no grading is attached."""


class ConfigError(SuperwError):
    """Invalid suite configuration."""


class Unsupported(SuperwError):
    """Input is valid but outside the supported desk scale."""
