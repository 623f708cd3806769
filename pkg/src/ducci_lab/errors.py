"""Exception types shared across the package."""

from __future__ import annotations


class DucciError(Exception):
    """Base class for all errors raised by this package."""


class ResourceError(DucciError):
    """A configured resource limit was hit.  The result is unknown, never wrong."""


class StepBudgetExceeded(ResourceError):
    """Cycle detection ran out of its step budget before finding the cycle."""

    def __init__(self, budget: int, context: str = ""):
        self.budget = budget
        msg = f"step budget of {budget} exceeded"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class GuardExceeded(ResourceError):
    """An enumeration or modulus guard was exceeded."""


class FactorizationLimitError(ResourceError):
    """Input is larger than trial division is allowed to certify."""


class CrosscheckMismatch(DucciError):
    """Two independent period computations disagree.

    Carries both records so callers can report exactly what diverged.
    """

    def __init__(self, field: str, structural, brute):
        self.field = field
        self.structural = structural
        self.brute = brute
        super().__init__(
            f"crosscheck mismatch on {field} for m={brute.m}, n={brute.n}: "
            f"structural={getattr(structural, field)}, brute={getattr(brute, field)}"
        )


class CharacterizationInapplicable(DucciError):
    """The requested closed-form characterization does not cover these parameters."""


class CacheError(DucciError):
    """Period cache file is missing, corrupt, or carries the wrong version."""
