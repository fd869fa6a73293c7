"""Domain errors. The class name doubles as the machine-readable error code."""


class KummerError(Exception):
    """Base class for every domain error raised by this package."""

    @property
    def code(self):
        return type(self).__name__


class NotInCone(KummerError):
    pass


class NotAmpleLike(KummerError):
    pass


class NonPositiveDenominator(KummerError):
    pass


class NonPositiveFiberDegree(KummerError):
    pass


class UnboundedRegion(KummerError):
    pass


class InsufficientSamples(KummerError):
    pass
