"""
errors.py - exceptions raised by the ring toolkit.

Everything derives from RingError so the CLI can map the whole family
to exit codes in one place.
"""

from typing import Any, Optional, Tuple


class RingError(Exception):
    """Base class for every error the toolkit raises on purpose."""


class MixedRings(RingError):
    """Two operands belong to different rings."""

    def __init__(self, left: Any, right: Any):
        super().__init__(f"operands live in different rings: {left} and {right}")
        self.left = left
        self.right = right


class InvalidParameter(RingError):
    """A construction parameter is out of range."""

    def __init__(self, message: str, span: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.message = message
        self.span = span

    def with_span(self, span: Tuple[int, int]) -> "InvalidParameter":
        return type(self)(self.message, span)


class OrderOverflow(InvalidParameter):
    """The ring would exceed the global enumeration cap."""

    def __init__(self, message: str, span: Optional[Tuple[int, int]] = None, order: Optional[int] = None, cap: int = 0):
        super().__init__(message, span)
        self.order = order
        self.cap = cap

    def with_span(self, span: Tuple[int, int]) -> "OrderOverflow":
        return OrderOverflow(self.message, span, self.order, self.cap)


class ConstructionError(RingError):
    """A builder produced a value outside its own family (closure failure)."""


class NotAnIdeal(RingError):
    """A subset handed to quotient_ring is not a two-sided ideal."""

    def __init__(self, message: str, witness: Tuple[int, ...] = ()):
        super().__init__(message)
        self.witness = witness


class AxiomViolation(RingError):
    """A ring law failed; `triple` holds the offending element indices."""

    def __init__(self, law: str, triple: Tuple[int, ...]):
        super().__init__(f"{law} fails on {triple}")
        self.law = law
        self.triple = triple


class BudgetExhausted(RingError):
    """A sweep ran out of budget before finishing; no verdict may be claimed."""

    def __init__(self, examined: int, limit: int, reason: str = "pairs"):
        super().__init__(f"budget exhausted after {examined} tuples ({reason} limit {limit})")
        self.examined = examined
        self.limit = limit
        self.reason = reason


class ContradictionFound(RingError):
    """Two reports in one profile violate a proven implication."""

    def __init__(self, rule: str, premise: Any, conclusion: Any):
        super().__init__(f"implication '{rule}' violated: {premise} vs {conclusion}")
        self.rule = rule
        self.premise = premise
        self.conclusion = conclusion
