"""Exception types raised across the package."""


class MpfssError(Exception):
    pass


class InvalidScalar(MpfssError, ValueError):
    pass


class DecodeError(MpfssError, ValueError):
    pass


class MajorityViolation(MpfssError, ValueError):
    pass


class IncompleteShares(MpfssError, ValueError):
    pass


class InconsistentShares(MpfssError, ValueError):
    pass


class ParameterMismatch(MpfssError, ValueError):
    pass


class DomainError(MpfssError, ValueError):
    pass


class RangeError(MpfssError, ValueError):
    pass


class OutOfRangeError(MpfssError, ValueError):
    pass


class EncodingFailure(MpfssError, RuntimeError):
    pass
