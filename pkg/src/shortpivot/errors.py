"""Exception hierarchy shared by every module."""


class ShortPivotError(Exception):
    """Base class for all errors raised by the package."""


class FormatError(ShortPivotError, ValueError):
    """Malformed instance, trace or matrix text."""


class NonSquare(ShortPivotError, ValueError):
    pass


class SizeMismatch(ShortPivotError, ValueError):
    pass


class IndexOutOfRange(ShortPivotError, IndexError):
    pass


class EmptySelection(ShortPivotError, ValueError):
    pass


class SingularMatrix(ShortPivotError, ArithmeticError):
    pass


class SingularBasis(SingularMatrix):
    pass


class SingularBorderedBasis(SingularMatrix):
    pass


class InternalInvariant(ShortPivotError, AssertionError):
    """A mathematically impossible state was reached; always a defect."""


class PartitionRepairFailed(InternalInvariant):
    pass


class IdentityViolated(InternalInvariant):
    pass


class NoBlockingComponent(ShortPivotError, ValueError):
    pass


class InnerLoopCapExceeded(ShortPivotError, RuntimeError):
    def __init__(self, message: str, state: dict | None = None):
        super().__init__(message)
        self.state = state or {}


class ReplayError(ShortPivotError):
    def __init__(self, level: int, message: str):
        super().__init__(f"level {level}: {message}")
        self.level = level


class SingularBasisAtLevel(ReplayError):
    pass


class NegativeComponentAtLevel(ReplayError):
    pass


class DirectionUnavailable(ShortPivotError):
    def __init__(self, message: str, achievable: tuple = ()):
        super().__init__(message)
        self.achievable = achievable


class CertificateAssemblyFailed(InternalInvariant):
    pass


class InstanceTooLarge(ShortPivotError, ValueError):
    pass


class InvalidCertificate(ShortPivotError, ValueError):
    pass


class InvalidPivotSequence(ShortPivotError, ValueError):
    pass
