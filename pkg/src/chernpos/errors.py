"""Exception hierarchy shared by all modules."""


class ChernposError(Exception):
    """Base class for every error raised by this package."""


class DegreeUndefined(ChernposError):
    """The ring carries no degree functional (free formal base)."""


class RingMismatch(ChernposError):
    """Two classes or bundles live in different rings."""


class RankNotIntegral(ChernposError):
    """An operation needs an honest bundle but got a rational rank or a formal twist."""


class InternalSymmetryError(ChernposError):
    """A supposedly symmetric polynomial failed to convert to the elementary basis."""


class EmptyWedge(ChernposError):
    """Exterior power of degree larger than the rank."""


class EmptyInput(ChernposError):
    pass


class PreconditionFailed(ChernposError):
    pass


class UnknownBundle(ChernposError):
    pass


class EnumerationTooLarge(ChernposError):
    """Tableau enumeration would exceed the configured cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"enumeration of {count} tableaux exceeds cap {cap}")
        self.count = count
        self.cap = cap
