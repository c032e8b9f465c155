"""Exception types shared across the package.

The CLI maps these onto distinct exit codes (domain -> 3, capacity -> 4),
so library code should raise the most specific one that applies.
"""


class DomainError(ValueError):
    """Input is outside the mathematical domain of the operation."""


class DegenerateRadiusError(DomainError):
    """Operation needs a circle of positive radius (norm 2 puts the orbit
    point at the center, where angles are undefined)."""


class CapacityError(ValueError):
    """Input exceeds a documented size cap (width or enumeration bound)."""


class ResumeError(RuntimeError):
    """Checkpoint/resume state is missing, inconsistent, or corrupt."""


class VerificationError(AssertionError):
    """An internal cross-check that must hold exactly has failed."""
