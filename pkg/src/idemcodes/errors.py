"""Exception hierarchy shared by every idemcodes module."""

from __future__ import annotations


class IdemcodesError(Exception):
    """Base class; ``code`` is the machine-readable tag used in JSON output."""

    code = "error"


class DivisionByZero(IdemcodesError, ZeroDivisionError):
    code = "division_by_zero"


class ContextMismatch(IdemcodesError, ValueError):
    code = "context_mismatch"


class NotCoprime(IdemcodesError, ValueError):
    code = "not_coprime"


class NotASubfieldDegree(IdemcodesError, ValueError):
    code = "not_a_subfield_degree"


class OrderNotAvailable(IdemcodesError, ValueError):
    code = "order_not_available"


class BadParameters(IdemcodesError, ValueError):
    code = "bad_parameters"


class GroupTooLarge(IdemcodesError, ValueError):
    code = "group_too_large"


class NotNormal(IdemcodesError, ValueError):
    code = "not_normal"


class NotCyclic(IdemcodesError, ValueError):
    code = "not_cyclic"


class NotNilpotent(IdemcodesError, ValueError):
    code = "not_nilpotent"


class QuotientNotCyclic(IdemcodesError, ValueError):
    code = "quotient_not_cyclic"


class CharacteristicDividesOrder(IdemcodesError, ValueError):
    code = "characteristic_divides_order"


class NotFaithfulClass(IdemcodesError, ValueError):
    code = "not_faithful_class"


class NotStrongShodaPair(IdemcodesError, ValueError):
    code = "not_strong_shoda_pair"


class NontrivialTwisting(IdemcodesError, ValueError):
    code = "nontrivial_twisting"


class NotInComponent(IdemcodesError, ValueError):
    code = "not_in_component"


class SingularSystem(IdemcodesError, ArithmeticError):
    code = "singular_system"


class NoSolution(IdemcodesError, ArithmeticError):
    code = "no_solution"


class PresentationMatchFailure(IdemcodesError, LookupError):
    code = "presentation_match_failure"


class CoefficientsNotInBaseField(IdemcodesError, ValueError):
    code = "coefficients_not_in_base_field"


class BudgetExceeded(IdemcodesError, RuntimeError):
    """Enumeration would exceed the budget.

    ``upper_bound`` is the smallest weight seen among the words that were
    inspected; it bounds the minimum distance from above only.
    """

    code = "budget_exceeded"

    def __init__(self, message: str, upper_bound: int | None = None) -> None:
        super().__init__(message)
        self.upper_bound = upper_bound


class ParseError(IdemcodesError, ValueError):
    code = "parse_error"

    def __init__(self, message: str, text: str = "", pos: int = 0) -> None:
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos
