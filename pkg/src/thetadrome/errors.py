"""Exception hierarchy for thetadrome.

Construction problems (bad input data) and verification problems (a numeric
invariant failed) are kept in separate branches so the CLI can map them to
distinct exit codes.
"""


class ThetadromeError(Exception):
    """Base class for all package errors."""


class ConstructionError(ThetadromeError):
    """Invalid input data or an object invariant violated at build time."""


class VerificationError(ThetadromeError):
    """A computed quantity failed a numeric invariant."""


# -- curve / path errors ----------------------------------------------------

class DuplicateBranchPoint(ConstructionError):
    pass


class OddCount(ConstructionError):
    pass


class PathTooCloseToBranchPoint(ConstructionError):
    pass


class BasepointOnCut(ConstructionError):
    pass


class ChartDomainViolation(ConstructionError):
    pass


# -- quadrature / periods ---------------------------------------------------

class QuadratureNotConverged(VerificationError):
    pass


class SymmetryViolation(VerificationError):
    pass


class NotPositiveDefinite(VerificationError):
    pass


class ExtrapolationNotConverged(VerificationError):
    pass


# -- theta ------------------------------------------------------------------

class TruncationRadiusExceeded(ConstructionError):
    pass


class ThetaVanishes(VerificationError):
    pass


# -- characteristics ----------------------------------------------------------

class NotHalfInteger(VerificationError):
    pass


class WrongCardinality(ConstructionError):
    pass


# -- kernels / psi ------------------------------------------------------------

class CoincidentPlaces(ConstructionError):
    pass


class SubsetTNotSet(ConstructionError):
    pass


class SceneInvalid(ConstructionError):
    pass


class BranchPointEvaluation(ConstructionError):
    pass


class SingularFj(VerificationError):
    pass


class ContinuationFailed(VerificationError):
    pass


class StepTooLarge(ConstructionError):
    pass
