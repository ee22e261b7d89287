class ArtifactError(Exception):
    """Base error. `condition` names the hypothesis that failed."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class PreconditionViolated(ArtifactError):
    pass


class InfiniteQuotient(PreconditionViolated):
    pass


class NotABasis(PreconditionViolated):
    pass


class NotQuadratic(PreconditionViolated):
    pass


class HandleMismatch(ArtifactError):
    pass


class NotInvertible(PreconditionViolated):
    pass


class NotCentral(PreconditionViolated):
    pass


class NotHermitian(PreconditionViolated):
    pass


class BadDegreeArithmetic(PreconditionViolated):
    pass


class FieldMismatch(PreconditionViolated):
    pass


class SupportNotGroup(PreconditionViolated):
    pass


class ZeroProduct(ArtifactError):
    pass


class DegreeOutsideSupport(ArtifactError):
    pass


class NoAdjoint(PreconditionViolated):
    pass


class AdjointFails(PreconditionViolated):
    pass


class NormBasePointNotUnit(PreconditionViolated):
    pass


class IotaMissing(PreconditionViolated):
    pass


class WProductNotOne(PreconditionViolated):
    pass


class LambdaSumNonzero(PreconditionViolated):
    pass


class NotClassI(PreconditionViolated):
    pass


class NotClassIII(PreconditionViolated):
    pass


class UnrecognizedGeometry(ArtifactError):
    pass


class RecipeError(ArtifactError):
    """Malformed recipe (schema problem, not a mathematical one)."""


class NoAdmissibleTheta(PreconditionViolated):
    """No graded semilinear automorphism makes psi hermitian."""
