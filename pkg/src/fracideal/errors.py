"""Exception types shared across backends."""


class FracIdealError(Exception):
    pass


class ZeroElement(FracIdealError, ValueError):
    pass


class MixedOrders(FracIdealError, ValueError):
    pass


class MixedSemigroups(FracIdealError, ValueError):
    pass


class InternalInconsistency(FracIdealError, AssertionError):
    """Two routes that must agree did not; always an arithmetic bug."""


class OracleMismatch(InternalInconsistency):
    pass


class UnsupportedBackend(FracIdealError, TypeError):
    pass


class NotFound(FracIdealError, LookupError):
    pass
