"""Exception hierarchy.

Every error carries a short ``code`` (the class name) and a ``detail``
mapping so the CLI can emit machine-readable diagnostics.
"""


class DilatkitError(Exception):
    exit_code = 1

    def __init__(self, message="", **detail):
        super().__init__(message)
        self.detail = detail

    @property
    def code(self):
        return type(self).__name__

    def as_dict(self):
        out = {"code": self.code, "message": str(self)}
        if self.detail:
            out["detail"] = self.detail
        return out


class ParseError(DilatkitError):
    pass


# -- surface validation ------------------------------------------------------

class ValidationError(DilatkitError):
    pass


class UnmatchedEdge(ValidationError):
    pass


class OrientationMismatch(ValidationError):
    pass


class DegenerateEdge(ValidationError):
    pass


class NonSimplePolygon(ValidationError):
    pass


class NotConnected(ValidationError):
    pass


class NotDilation(ValidationError):
    pass


class ParameterOutOfRange(ValidationError):
    pass


class UnknownGenerator(DilatkitError):
    pass


class InternalInvariantError(DilatkitError):
    """An identity that must hold for every accepted surface failed."""

    exit_code = 3


# -- holonomy ----------------------------------------------------------------

class IncompatiblePeriods(DilatkitError):
    pass


class NonRealOrders(DilatkitError):
    pass


class BasisMismatch(DilatkitError):
    pass


class BasisNotFound(DilatkitError):
    pass


# -- curves and framings -----------------------------------------------------

class PathError(DilatkitError):
    pass


class PathThroughVertex(PathError):
    pass


class CuspAtCorner(PathError):
    pass


class NotClosed(PathError):
    pass


class RepresentativeClassMismatch(DilatkitError):
    pass


class CocycleMovesBoundary(DilatkitError):
    pass


class NonIntegralPeriods(DilatkitError):
    pass


class ArfUndefined(DilatkitError):
    pass


# -- classification ----------------------------------------------------------

class InvalidSignature(DilatkitError):
    pass


class SignatureMismatch(DilatkitError):
    pass


class BoundExhausted(DilatkitError):
    pass
