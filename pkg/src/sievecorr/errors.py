"""Exception hierarchy shared by every module of the package."""


class SieveCorrError(Exception):
    """Base class for all package errors."""


class NonInvertible(SieveCorrError, ValueError):
    pass


class NonPositiveModulus(SieveCorrError, ValueError):
    pass


class LimitTooLarge(SieveCorrError, MemoryError):
    pass


class BadTableLength(SieveCorrError, ValueError):
    pass


class SegmentTooShort(SieveCorrError, ValueError):
    pass


class ShiftTooLarge(SieveCorrError, ValueError):
    pass


class NonDyadicSupport(SieveCorrError, ValueError):
    pass


class TableTooNarrow(SieveCorrError, ValueError):
    pass


class DegenerateFit(SieveCorrError, ValueError):
    pass


class ConfigError(SieveCorrError, ValueError):
    pass
