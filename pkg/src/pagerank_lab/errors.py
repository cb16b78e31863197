"""Exception types shared across the package."""


class PageRankLabError(Exception):
    """Base class for every error raised by this package."""


class MalformedLine(PageRankLabError):
    """An edge-list line is not two whitespace-separated non-negative integers."""


class IndexOutOfRange(PageRankLabError):
    """A page index lies outside [0, n)."""


class TooFewPages(PageRankLabError):
    """Graphs must have more than two pages."""


class InvalidProbability(PageRankLabError):
    """A probability parameter lies outside its admissible range."""


class InvalidAlpha(PageRankLabError):
    """Teleport weight must lie strictly inside (0, 1)."""


class InvalidBeta(PageRankLabError):
    """Update probability must lie in (0, 1]."""


class DanglingNode(PageRankLabError):
    """A page without out-links was found under the reject policy."""


class DimensionMismatch(PageRankLabError):
    """Vector or matrix dimensions do not agree."""


class DenseLimitExceeded(PageRankLabError):
    """Dense verification was requested above the configured size limit."""


class EnumerationLimitExceeded(PageRankLabError):
    """Pattern enumeration was requested above the 2**n feasibility limit."""


class InvalidMatrix(PageRankLabError):
    """A matrix violates the column-stochastic invariants."""


class NotProbabilityVector(PageRankLabError):
    """A vector violates the probability-vector invariants."""


class InsufficientSamples(PageRankLabError):
    """Too few usable samples for a rate fit."""


class NotConverged(PageRankLabError):
    """Iteration budget exhausted; carries the best iterate seen."""

    def __init__(self, message: str, best=None, iterations: int = 0):
        super().__init__(message)
        self.best = best
        self.iterations = iterations
