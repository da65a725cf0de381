"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all toolkit-specific failures."""


class UsageError(ToolkitError):
    """Invalid input, unsupported request, or violated precondition."""


class BudgetError(ToolkitError):
    """A configured size cap or search budget was exhausted."""


class DegreeMismatch(UsageError):
    """Permutations of different degrees were combined."""


class UnknownSpec(UsageError):
    """Unrecognized builtin group specification."""


class PrimeDoesNotDivide(UsageError):
    """The requested prime does not divide the group order."""


class CapExceeded(BudgetError):
    """Group closure passed the element enumeration cap."""


class SizeExceeded(BudgetError):
    """A poset, chain or complex construction passed its size bound."""


class Disconnected(UsageError):
    """Operation requires a connected complex."""


class ActionInvalid(ToolkitError):
    """Supplied group action violates the action laws."""


class OrderNotTransitive(ToolkitError):
    """Induced orbit relation failed to be a partial order."""


class NotInSylow(UsageError):
    """Subgroup is not contained in the given Sylow subgroup."""


class NotFullyCentralized(UsageError):
    """Subgroup is not fully centralized in the fixed Sylow subgroup."""


class PreconditionViolated(UsageError):
    """Operation-specific precondition does not hold."""
