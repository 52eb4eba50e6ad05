"""Exception taxonomy. Each maps to a distinct CLI exit code (see cli.EXIT_CODES)."""


class KohncertError(Exception):
    """Base class for all structured engine errors."""


class ParseError(KohncertError):
    """Input does not conform to the polynomial/domain grammar."""


class InfiniteTypeError(KohncertError):
    """A curve witnessing infinite type was found (all premultipliers vanish on it)."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PrecisionError(KohncertError):
    """An order comparison or expansion could not be decided at the working precision."""


class FieldTowerError(KohncertError):
    """An operation would require a second independent algebraic extension."""


class GenericityError(KohncertError):
    """Seeded generic-combination retries exhausted without passing the a-posteriori check."""


class InvariantViolationError(KohncertError):
    """A re-verified lemma conclusion or certificate invariant failed (internal bug or precision)."""
