"""Exception types shared by the library and the CLI."""


class CoxeterError(Exception):
    """Base class for errors raised by coxclosure."""


class UnknownGenerator(CoxeterError, ValueError):
    pass


class RootDepthExceeded(CoxeterError):
    """A result needs a root outside the enumerated registry; rebuild with a larger depth cap."""


class InfiniteBond(CoxeterError):
    pass


class NoJoin(CoxeterError):
    """The two elements have no common upper bound in the weak order."""


class NoJoinWithinCap(CoxeterError):
    pass


class JoinAnomaly(CoxeterError):
    """Several minimal upper bounds were found; weak-order joins are unique, so this is a bug."""


class IterationCapExceeded(CoxeterError):
    pass


class TruncationUnsound(CoxeterError):
    """A truncated computation was about to be reported as exact."""


class NoConnectingReflection(CoxeterError):
    pass


class NotTypeA(CoxeterError):
    pass
