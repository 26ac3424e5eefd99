"""Exception types raised across the package."""


class WHKError(Exception):
    """Base class for every error raised by whk."""


class ShapeMismatch(WHKError):
    pass


class FieldMismatch(WHKError):
    pass


class DimMismatch(WHKError):
    pass


class Inconsistent(WHKError):
    """A linear system has no solution."""


class SingularMatrix(WHKError):
    pass


class NotInSubspace(WHKError):
    pass


class AntipodeNotInvertible(WHKError):
    pass


class AxiomFailure(WHKError):
    """A structure failed validation; ``report`` carries the witnesses."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotASubalgebra(WHKError):
    pass


class NotInvariant(WHKError):
    pass


class DatumMismatch(WHKError):
    pass


class DegenerateDatum(WHKError):
    pass


class AssociativityFailure(AxiomFailure):
    pass


class NotAnIso(AxiomFailure):
    pass


class WellDefinednessFailure(AxiomFailure):
    pass


class HMismatch(WHKError):
    pass


class NoDualIntegral(WHKError):
    pass


class NoNondegenerateIntegral(WHKError):
    pass


class NotBijective(AxiomFailure):
    pass


class NotAGroupoid(WHKError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
