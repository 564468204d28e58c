"""Exception types shared across the package."""


class HamregError(Exception):
    """Base class for all package errors."""


class CyclicBinding(HamregError):
    """A substitution binding references the symbol it binds."""


class DenominatorZero(HamregError):
    """A rational operation produced an identically zero denominator."""


class DegreeCapExceeded(HamregError):
    """A chart-variable exponent exceeded the hard degree cap."""


class NotHamiltonian(HamregError):
    """Vector field fails the exactness check for the given 2-form."""


class NotPolynomial(HamregError):
    """A quantity required to be polynomial has a nontrivial denominator."""


class EmptySupport(HamregError):
    """Newton polygon requested for a polynomial with empty support."""


class UnresolvedCenter(HamregError):
    """A fiber polynomial does not split into ring roots."""


class CascadeOverflow(HamregError):
    """A cascade exceeded the configured blow-up budget."""


class UnsolvedConstraint(HamregError):
    """A resonance constraint falls outside the supported normal form."""


class ParseError(HamregError):
    """Input text violates the expression grammar."""

    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)
        self.line = line
        self.col = col


class UndeclaredSymbol(ParseError):
    """An identifier in the input is not z, a declared symbol, or a variable."""
