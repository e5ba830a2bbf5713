"""Exception types shared across posetlab."""


class PosetlabError(Exception):
    pass


class CycleError(PosetlabError, ValueError):
    """Cover relations contain a directed cycle."""


class ParseError(PosetlabError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SizeLimitError(PosetlabError):
    pass


class PreconditionError(PosetlabError, ValueError):
    pass


class NotIncomparableError(PosetlabError, ValueError):
    pass


class NotReversibleError(PosetlabError):
    def __init__(self, cycle):
        self.cycle = cycle
        super().__init__(f"pairs contain an alternating cycle: {cycle}")


class BudgetExceededError(PosetlabError):
    """A search ran out of budget; ``lower``/``upper`` carry the best known bounds."""

    def __init__(self, message, lower=None, upper=None):
        self.lower = lower
        self.upper = upper
        super().__init__(message)


class ColorCollisionError(PosetlabError):
    """Two elements that must be distinguished by the coloring share a color."""


class InternalProofViolation(PosetlabError, AssertionError):
    """A mechanically checked proof step failed. Never expected to fire."""


class DomainError(PosetlabError, ValueError):
    pass
