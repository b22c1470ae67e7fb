"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the domain an operation is defined on."""


class FactorizationError(DomainError):
    """A word does not factor over the expected block code."""


class BudgetError(RuntimeError):
    """A computation would exceed its configured resource budget."""


class BalanceViolation(DomainError):
    """A window deviates from the target frequency by more than 1/n.

    Carries the offending window so callers can inspect it.
    """

    def __init__(self, n: int, position: int, deviation: float, bound: float):
        self.n = n
        self.position = position
        self.deviation = deviation
        self.bound = bound
        super().__init__(
            f"window of length {n} at position {position}: "
            f"deviation {deviation:.6g} exceeds 1/n = {bound:.6g}"
        )
