"""Exception hierarchy.  Everything derives from ``ValueError`` so callers
that only care about bad input can catch one type."""


class WignerPacsError(ValueError):
    pass


class NonFiniteFieldError(WignerPacsError):
    def __init__(self, msg="non-finite field"):
        super().__init__(msg)


class UnsupportedOrderError(WignerPacsError):
    pass


class InvalidChannelError(WignerPacsError):
    pass


class NotNonclassicalError(WignerPacsError):
    def __init__(self, msg="state not nonclassical"):
        super().__init__(msg)


class TruncationError(WignerPacsError):
    pass


class SeriesConvergenceError(WignerPacsError):
    pass


class UndefinedPhaseError(WignerPacsError):
    pass
