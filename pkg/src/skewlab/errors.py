"""Exception hierarchy shared by every skewlab module."""


class SkewlabError(ValueError):
    """Base class for all domain errors raised by skewlab."""


class DimMismatch(SkewlabError):
    pass


class NotSquare(SkewlabError):
    pass


class NonFinite(SkewlabError):
    pass


class NotHermitian(SkewlabError):
    pass


class NotUnitary(SkewlabError):
    pass


class NoConvergence(SkewlabError):
    pass


class NegativeEigenvalue(SkewlabError):
    pass


class NegativeExponent(SkewlabError):
    pass


class NotDensityMatrix(SkewlabError):
    pass


class BlochNormExceeded(SkewlabError):
    pass


class BadIndex(SkewlabError):
    pass


class BadProbability(SkewlabError):
    pass


class IncompleteChannel(SkewlabError):
    pass


class InvalidParams(SkewlabError):
    pass


class RegimeViolation(SkewlabError):
    pass


class TooFewElements(SkewlabError):
    pass


class TooFewChannels(TooFewElements):
    pass


class SearchBudgetExceeded(SkewlabError):
    """Heuristic assignment search ran out of evaluations.

    ``best`` holds the best-so-far result at the moment the budget ran out.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class ConfigParse(SkewlabError):
    pass


class DominanceViolation(SkewlabError):
    """A computed lower bound exceeded the quantity it is supposed to bound."""

    def __init__(self, message, dump=None):
        super().__init__(message)
        self.dump = dump
