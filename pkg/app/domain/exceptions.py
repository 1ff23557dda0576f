"""Domain errors"""
from typing import Optional


class GraphInputError(ValueError):
    """Malformed graph input or unknown edge/vertex id"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(ValueError):
    """Operation called outside its stated preconditions"""
    pass


class PolynomialError(ValueError):
    """Invalid polynomial operation (non-linear split, bad alphabet, ...)"""
    pass


class BudgetExceededError(RuntimeError):
    """Enumeration would exceed the configured leaf budget"""

    def __init__(self, needed: int, budget: int):
        self.needed = needed
        self.budget = budget
        super().__init__(f"enumeration needs {needed} leaves, budget is {budget}")


class ConsistencyError(RuntimeError):
    """Internal consistency check failed; signals a bug, not a math failure"""
    pass
