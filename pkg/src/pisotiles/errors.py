"""Exception hierarchy shared by all modules."""


class PisotilesError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(PisotilesError):
    """Malformed substitution text; carries a 1-based line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MissingRuleError(ParseError):
    pass


class DuplicateRuleError(ParseError):
    pass


class NotInvertibleError(PisotilesError):
    """The endomorphism cannot be a free-group automorphism (determinant not ±1)."""


class NotFoundError(PisotilesError):
    """A bounded search exhausted its budget; not a proof of non-existence."""

    def __init__(self, message, reason=None):
        self.reason = reason or message
        super().__init__(message)


class NegativeEntryError(PisotilesError):
    """Primitivity test applied to a matrix with a negative entry."""


class PisotCheckError(PisotilesError):
    """Base for the four named Pisot verification failures."""


class NotPrimitiveError(PisotCheckError):
    pass


class NotUnimodularError(PisotCheckError):
    pass


class NotIrreducibleError(PisotCheckError):
    pass


class NotPisotError(PisotCheckError):
    pass


class NoSeedError(PisotilesError):
    """No letter restarts its own image within the allowed power."""


class NegativeLetterError(PisotilesError):
    """A geometric realisation was asked for a word with inverse letters."""


class NotClosedError(PisotilesError):
    """Polygon endpoints do not match."""


class NotEigenError(PisotilesError):
    """The map does not preserve the tile-length direction."""


class BadInverseError(PisotilesError):
    """A claimed inverse failed the identity check."""
