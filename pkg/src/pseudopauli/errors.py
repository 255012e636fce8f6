"""Exception hierarchy shared by every module of the package."""


class PseudoPauliError(ValueError):
    """Base class for all errors raised by ``pseudopauli``."""


class DimensionOverflow(PseudoPauliError):
    pass


class DimensionMismatch(PseudoPauliError):
    pass


class NotHermitian(PseudoPauliError):
    pass


class NotPositiveDefinite(PseudoPauliError):
    pass


class QubitMismatch(PseudoPauliError):
    pass


class NotPauli(PseudoPauliError):
    pass


class NotSubgroup(PseudoPauliError):
    pass


class DegenerateParams(PseudoPauliError):
    """Raised at the exceptional point ``|omega| <= |delta|`` (Omega not positive)."""


class NormalizationFailure(PseudoPauliError):
    pass


class CrossCheckFailure(PseudoPauliError):
    """Two independent routes to the same matrix disagree."""


class NonGaussianEntries(PseudoPauliError):
    pass


class WrongParameterPoint(PseudoPauliError):
    pass


class GridTooCoarse(PseudoPauliError):
    pass
