"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: input errors exit 2, capacity errors 3.
"""


class StableNuError(Exception):
    """Base class for all library errors."""


class InputError(StableNuError, ValueError):
    """Malformed input or a violated precondition on caller-supplied data."""


class CapacityError(StableNuError):
    """The instance exceeds the size limit of an exact search."""


class ContractError(InputError):
    """A contraction was requested where its precondition does not hold."""


class ReduceError(InputError):
    """A matrix reduction was requested where its precondition does not hold."""


class SingularPivotError(StableNuError, ArithmeticError):
    """The pivot block of a Schur complement is singular."""


class InternalConsistencyError(StableNuError, AssertionError):
    """A self-check failed; indicates a bug or a false mathematical premise."""


class LiftError(InternalConsistencyError):
    """A lifted support-property witness failed to validate on the larger instance."""
