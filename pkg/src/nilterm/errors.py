"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`NiltermError`,
so callers (and the CLI) can catch one type.
"""


class NiltermError(Exception):
    pass


# root systems
class InvalidRank(NiltermError):
    pass


class NotABase(NiltermError):
    pass


class NotInSpan(NiltermError):
    pass


# diagrams
class DimensionMismatch(NiltermError):
    pass


class VeryEvenAmbiguity(NiltermError):
    pass


class LeviMismatch(NiltermError):
    pass


# twists and groups
class NotMarked(NiltermError):
    pass


class NotNormalizing(NiltermError):
    """The twist moves the mark pattern, so its label map does not normalize the Levi."""


class BudgetExceeded(NiltermError):
    pass


class DivisibilityViolation(NiltermError):
    pass


# partitions
class ParityViolation(NiltermError):
    pass


class SumMismatch(NiltermError):
    pass


class VeryEvenUnsupported(NiltermError):
    pass


class UnsupportedFamily(NiltermError):
    pass


class InvalidBlock(NiltermError):
    pass


class PreconditionViolated(NiltermError):
    pass


class ChainMismatch(NiltermError):
    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


# counting
class UnsupportedMerge(NiltermError):
    pass


class NonIntegralOrder(NiltermError):
    pass


class NonIntegralCount(NiltermError):
    pass


class SurjectivityFailure(NiltermError):
    pass


class OrderMismatch(NiltermError):
    pass


class HomomorphismViolation(NiltermError):
    """Two words for the same matrix received different values."""


# documents
class ParseError(NiltermError):
    pass


class ValidationError(NiltermError):
    def __init__(self, message, field=None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field
