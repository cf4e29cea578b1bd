"""Exception hierarchy.

The CLI maps these onto exit codes: :class:`UserInputError` subclasses exit
with 1, :class:`ComputationRefused` subclasses with 2 and
:class:`InvariantBreach` with 3.
"""


class ChristolError(Exception):
    """Base class for every error raised by the package."""


class UserInputError(ChristolError, ValueError):
    pass


class ComputationRefused(ChristolError):
    pass


class InvariantBreach(ChristolError, AssertionError):
    pass


class FieldError(UserInputError):
    """Bad field parameters: composite p, reducible or wrong-degree modulus."""


class ParseError(UserInputError):
    def __init__(self, message, position):
        super().__init__(f"syntax error at offset {position}: {message}")
        self.position = position


class InseparableCurveError(UserInputError):
    """gcd(f, df/dT) has positive T-degree, so x is not separating."""


class NotInvertibleError(ChristolError, ArithmeticError):
    """Raised when inverting an element of K fails.

    ``factor`` holds the nontrivial common factor of the element's minimal
    relation and f, which exposes f as reducible.
    """

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class BranchError(UserInputError):
    """The requested branch is not a simple root of f(0, T)."""


class PoleError(UserInputError):
    """Element has a pole at x = 0 and no power series expansion."""


class PrecisionError(ComputationRefused):
    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class StateLimitError(ComputationRefused):
    pass


class NoRelationError(ComputationRefused):
    pass
