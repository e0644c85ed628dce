"""Exception hierarchy shared by every strops module."""


class StropsError(Exception):
    """Base class for domain errors; the CLI maps these to exit status 2."""


class PresentationError(StropsError):
    """A ring presentation is malformed (non-homogeneous relation, bad name, ...)."""


class ConfluenceError(PresentationError):
    """The rewrite system induced by the relations is not confluent.

    ``critical_pair`` holds the two lead monomials (as strings) whose overlap
    reduces to different normal forms.
    """

    def __init__(self, message: str, critical_pair: tuple[str, str]):
        super().__init__(message)
        self.critical_pair = critical_pair


class DegreeBoundError(StropsError):
    """A degree outside the verified confluence/enumeration bound was requested."""


class MixedRingError(StropsError):
    """Operands of a binary operation live in different rings."""


class DualityError(StropsError):
    """Poincare duality is unavailable for the requested coefficients."""


class UnknownSpaceError(StropsError):
    """An identifier does not name a catalog space, fiber or map."""
