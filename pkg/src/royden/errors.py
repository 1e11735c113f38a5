"""Exception hierarchy.

Validation problems (bad input differentials) derive from ``ValidationError``;
numerical breakdowns derive from ``NumericalError``. Every error carries an
optional ``stage`` label that the norm pipeline fills in on the way out.
"""


class RoydenError(Exception):
    stage: str | None = None

    def __str__(self):
        msg = super().__str__()
        return f"[{self.stage}] {msg}" if self.stage else msg


class ValidationError(RoydenError, ValueError):
    pass


class NotSquarefree(ValidationError):
    pass


class DegreeBoundViolated(ValidationError):
    pass


class ZeroNumerator(ValidationError):
    pass


class DimensionError(ValidationError):
    pass


class NumericalError(RoydenError, ArithmeticError):
    pass


class RootFindingError(NumericalError):
    def __init__(self, msg, worst_residual=float("nan")):
        super().__init__(msg)
        self.worst_residual = worst_residual


class DegenerateCover(NumericalError):
    pass


class PathConstructionFailed(NumericalError):
    pass


class RankMismatch(NumericalError):
    pass


class TrackingLost(NumericalError):
    pass


class QuadratureStalled(NumericalError):
    pass


class RiemannRelationViolation(NumericalError):
    pass


class DegreeOverflow(NumericalError):
    pass
