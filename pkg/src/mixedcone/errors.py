"""Exception types.

Every domain error carries a short ``code`` that the CLI reports verbatim.
"""


class MixedConeError(Exception):
    code = "MixedConeError"


class ZeroDirection(MixedConeError):
    code = "ZeroDirection"


class DimensionMismatch(MixedConeError):
    code = "DimensionMismatch"


class SizeError(MixedConeError):
    code = "SizeError"


class DivergentFamily(MixedConeError):
    code = "DivergentFamily"


class InexactDivision(MixedConeError):
    code = "InexactDivision"


class DegreeOverflow(MixedConeError):
    code = "DegreeOverflow"


class CuspRangeError(MixedConeError):
    code = "CuspRangeError"


class BodiesNotInSubspace(MixedConeError):
    code = "BodiesNotInSubspace"


class UnsupportedMeasureShape(MixedConeError):
    code = "UnsupportedMeasureShape"


class TrivialSubspace(MixedConeError):
    code = "TrivialSubspace"


class DirectionNotInSubspace(MixedConeError):
    code = "DirectionNotInSubspace"


class PreconditionError(MixedConeError):
    """A named precondition of an operation does not hold."""

    code = "PreconditionError"

    def __init__(self, name, message=""):
        super().__init__(f"{name}: {message}" if message else name)
        self.name = name


class InternalError(MixedConeError):
    """An invariant that exact arithmetic guarantees was violated."""

    code = "InternalError"
