"""Exception types raised across the package."""


class DimensionMismatch(ValueError):
    """Operands live in spaces of different dimension."""


class JacobiFailure(ValueError):
    """A bracket that must be Lie fails the Jacobi identity."""


class UncertifiedBracket(ValueError):
    """An operation that needs a Lie bracket was given one that is not."""


class SkewSymmetryBroken(ValueError):
    """n composed with r-sharp does not equal r-sharp composed with the transpose of n."""


class ConcomitantNonzero(ValueError):
    """The concomitant of an r-matrix and an operator does not vanish."""


class DegenerateR(ValueError):
    """r-sharp is singular where an invertible one is required."""


class IdentityViolation(AssertionError):
    """Two code paths that must agree produced different results.

    This signals a bug or a counterexample to a claimed identity; it is
    never raised for ordinary bad input.
    """


class ParseError(ValueError):
    """Input document is not well-formed JSON."""


class SchemaError(ValueError):
    """Input document is JSON but violates the schema."""


class UnknownName(KeyError):
    """No catalog entry with the requested name."""
