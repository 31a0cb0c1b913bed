"""Exception hierarchy shared by all odeq modules."""


class OdeqError(Exception):
    """Base class for every error raised by odeq."""


class EquationSyntaxError(OdeqError, SyntaxError):
    """Malformed equation text; ``position`` is the 0-based character offset."""

    def __init__(self, message, text="", position=0):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")
        self.offset = position + 1


class DegenerateEquation(OdeqError):
    """One of the variables S or T does not occur in the equation."""


class NotSquarefree(OdeqError):
    pass


class ReducibleEquation(OdeqError):
    """The equation factors over Q(z) (or provably over its closure)."""


class ProbablyReducible(ReducibleEquation):
    """Every tested specialization z = z0 factors over Q."""


class NonInvertibleDenominator(OdeqError, ZeroDivisionError):
    pass


class UnsupportedLocalForm(OdeqError):
    pass


class UnsupportedBranchLocus(OdeqError):
    pass


class NotHyperellipticSupported(OdeqError):
    pass


class GenusTooSmall(OdeqError):
    pass


class NoRationalPoint(OdeqError):
    pass


class UnsupportedModel(OdeqError):
    """The equation has no presentation the requested algorithm handles."""


class NonRationalSupport(OdeqError):
    pass


class NotAGenerator(OdeqError):
    pass


class DegenerateTuple(OdeqError):
    pass


class ResourceLimit(OdeqError):
    """An internal degree exceeded the ``ODEQ_MAX_DEGREE`` cap."""
