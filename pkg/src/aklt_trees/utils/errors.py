"""Custom exceptions for the AKLT tree toolkit.

Two families: validation errors (bad inputs, violated pre-conditions) and
numerical errors (budgets, convergence, backend disagreement). The CLI maps
them to exit codes 2 and 1.
"""


class AKLTTreesError(Exception):
    """Base exception for all toolkit errors."""

    def __init__(self, message: str, suggestion: str = ""):
        self.message = message
        self.suggestion = suggestion
        super().__init__(self.message)

    def __str__(self):
        if self.suggestion:
            return f"{self.message}\nSuggestion:  {self.suggestion}"
        return self.message


# Validation Errors
class ValidationError(AKLTTreesError):
    """Input rejected before any computation started."""


class ContractViolation(ValidationError):
    """An operation was called outside its documented pre-conditions."""


class CellGraphError(ValidationError):
    """A cell graph violates one of its structural invariants."""


class TreeError(ValidationError):
    """A finite tree is malformed (cycle, disconnected, bad parameters)."""


class DegreeSequenceError(ValidationError):
    """A degree sequence file or value is malformed."""


class BoundaryError(ValidationError):
    """A boundary operator is malformed or not positive semidefinite."""


# Numerical Errors
class NumericalError(AKLTTreesError):
    """A computation ran but could not produce a trustworthy result."""


class BackendMismatchError(NumericalError):
    """Two independent evaluations of the same quantity disagree."""


class BudgetExceededError(NumericalError):
    """A dense construction would exceed its configured size budget."""


class ConvergenceError(NumericalError):
    """An iterative solver did not reach its tolerance."""


class BoundViolationError(NumericalError):
    """A computed value fell outside a proven analytic bound."""
