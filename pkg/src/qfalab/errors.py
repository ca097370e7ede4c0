"""Exception types shared across the package."""


class QfaError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(QfaError):
    """Operand dimensions are incompatible or disagree with a declared size."""


class AlphabetError(QfaError):
    """A token is unknown to the machine, or an alphabet is malformed."""


class ParameterError(QfaError):
    """A numeric parameter lies outside its allowed range."""


class InputError(QfaError):
    """Inputs to a comparison are unusable together (e.g. different alphabets)."""


class ParseError(QfaError):
    """A machine document cannot be parsed.

    ``where`` locates the offending part, either as a ``line L column C``
    position for raw syntax errors or as a key path like ``transitions.a``.
    """

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(message if where is None else f"{where}: {message}")


class ValidationError(QfaError):
    """A machine violates its numeric invariants; carries the violation list."""

    def __init__(self, violations):
        self.violations = list(violations)
        detail = "; ".join(v.message for v in self.violations)
        super().__init__(f"invalid machine: {detail}")
