"""Exception and warning types shared across ssmkit."""


class SSMKitError(Exception):
    """Base class for all ssmkit errors."""


class DimensionMismatchError(SSMKitError, ValueError):
    """Operands or arguments have incompatible dimensions."""


class ConstantTermError(SSMKitError, ValueError):
    """A polynomial map has a constant term where none is allowed."""


class ConjugateSymmetryError(SSMKitError):
    """Coefficients violate the declared conjugate-pair symmetry.

    Raised by realification; signals an upstream solver bug rather than
    bad user input.
    """


class NotSemisimpleError(SSMKitError):
    """The linear part has a defective (non-diagonalizable) eigenvalue."""


class UnstableSpectrumError(SSMKitError):
    """An eigenvalue with nonnegative real part where decay is required."""


class ResonanceObstructionError(SSMKitError):
    """A zero divisor with nonzero right-hand side in a coefficient solve.

    No invariant graph of the requested smoothness exists at this order.

    Attributes
    ----------
    monomial : tuple of int
        Master-coordinate multi-index of the obstructed coefficient.
    outer_index : int
        1-based index of the enslaved eigenvalue hit by the resonance.
    divisor : complex
        The (near-zero) divisor value.
    residual : float
        Magnitude of the right-hand side that has no solution.
    """

    def __init__(self, monomial, outer_index, divisor, residual):
        self.monomial = tuple(monomial)
        self.outer_index = outer_index
        self.divisor = divisor
        self.residual = residual
        super().__init__(
            f"resonance obstruction at monomial {self.monomial}, outer eigenvalue "
            f"#{outer_index}: divisor {divisor:.3e} with right-hand side {residual:.3e}"
        )


class ZeroDivisorError(SSMKitError):
    """A formal (unguarded) series solve hit an exactly vanishing divisor."""


class StyleConflictError(SSMKitError):
    """The requested parametrization style is impossible for this spectrum."""


class NearResonanceWarning(UserWarning):
    """A divisor or nonresonance margin is small but above the violation tolerance."""


class FreeCoefficientWarning(UserWarning):
    """An exactly resonant coefficient had zero right-hand side.

    The solution is a family; the flat member (coefficient 0) was selected.
    """


class HarmonicTruncationWarning(UserWarning):
    """Discarded harmonic content exceeded 1% of the retained energy."""


class TangentialCrossingWarning(UserWarning):
    """A trajectory grazed a Poincare section without a transverse crossing."""
