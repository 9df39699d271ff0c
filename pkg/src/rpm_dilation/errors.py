"""Exception hierarchy shared by all modules."""


class RPMError(Exception):
    """Base class for every error raised by this package."""


class NotSquare(RPMError, ValueError):
    pass


class NotHermitian(RPMError, ValueError):
    pass


class NegativeEigenvalue(RPMError, ValueError):
    pass


class NormExceedsOne(NegativeEigenvalue):
    """A dilation input is not a contraction."""


class InvalidStep(RPMError, ValueError):
    pass


class DimensionMismatch(RPMError, ValueError):
    pass


class ZeroState(RPMError, ValueError):
    pass


class BadDecomposition(RPMError, ValueError):
    pass


class MismatchedDilation(RPMError, ValueError):
    pass


class BadDensityMatrix(RPMError, ValueError):
    pass


class NotConverged(RPMError, RuntimeError):
    pass


class ParseError(RPMError, ValueError):
    pass


class ValidationError(RPMError, ValueError):
    pass


class IoFailure(RPMError, OSError):
    pass
