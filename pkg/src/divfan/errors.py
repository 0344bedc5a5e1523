"""Exception hierarchy.

Every error raised on purpose by the library derives from ``DivfanError`` so
the command line front end can map it to exit code 2.
"""


class DivfanError(Exception):
    """Base class for all library errors."""

    def __init__(self, message="", **context):
        super().__init__(message)
        self.context = context

    def to_json(self):
        out = {"type": type(self).__name__, "message": str(self)}
        if self.context:
            out["context"] = {k: repr(v) if not isinstance(v, (str, int, float, bool, type(None), list, dict)) else v
                              for k, v in self.context.items()}
        return out


class DivisionByZero(DivfanError, ZeroDivisionError):
    pass


class FieldMismatch(DivfanError):
    pass


class ReducibleModulus(DivfanError):
    pass


class SizeBudgetExceeded(DivfanError):
    pass


class RankBudgetExceeded(SizeBudgetExceeded):
    pass


class RankMismatch(DivfanError):
    pass


class EmptyPolyhedron(DivfanError):
    pass


class FaceUnbounded(DivfanError):
    pass


class NonPointed(DivfanError):
    pass


class UnsupportedBase(DivfanError):
    pass


class NonIntegralPairing(DivfanError):
    pass


class OutsideDualCone(DivfanError):
    pass


class EmptyLocus(DivfanError):
    pass


class NotASection(DivfanError):
    pass


class TailViolation(DivfanError):
    pass


class ChainMismatch(DivfanError):
    pass


class OutsideLocus(DivfanError):
    pass


class BaseMismatch(DivfanError):
    pass


class FaceCertificateNotFound(DivfanError):
    pass


class NotAFan(DivfanError):
    pass


class NotAHomomorphism(DivfanError):
    pass


class SliceError(DivfanError):
    """Slices of a divisorial fan do not form polyhedral subdivisions."""


class DocumentError(DivfanError):
    pass
