"""Exception hierarchy shared by all modules."""


class ParikhError(Exception):
    """Base class for every error raised by this package."""


class UnknownLetter(ParikhError, ValueError):
    def __init__(self, position, character):
        self.position = position
        self.character = character
        super().__init__(f"unknown letter {character!r} at position {position}")


class InvalidSubset(ParikhError, ValueError):
    pass


class EmptyPattern(ParikhError, ValueError):
    pass


class LimitExceeded(ParikhError):
    def __init__(self, limit):
        self.limit = limit
        super().__init__(f"result has more than {limit} elements")


class IndexOutOfRange(ParikhError, IndexError):
    pass


class AlphabetMismatch(ParikhError, ValueError):
    pass


class BudgetExceeded(ParikhError):
    """The search ran out of nodes before reaching a verdict."""

    def __init__(self, budget, explored):
        self.budget = budget
        self.explored = explored
        super().__init__(f"node budget {budget} exhausted after {explored} nodes")


class InvalidGamma(ParikhError, ValueError):
    pass


class IncompatibleCandidate(ParikhError, ValueError):
    pass


class SearchSpaceTooLarge(ParikhError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"solution search exceeded the cap of {cap} nodes")


class TemplateSyntaxError(ParikhError, ValueError):
    pass


class InvalidSlot(ParikhError, ValueError):
    pass


class UnsupportedPrefix(ParikhError, ValueError):
    pass
