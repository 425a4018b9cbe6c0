"""Exception hierarchy shared by every module."""


class InputError(ValueError):
    """Caller supplied data outside an operation's domain."""


class SingularMatrixError(InputError):
    """An exponent matrix is not invertible over the rationals."""


class UnsupportedInputError(InputError):
    """Input is valid but the requested fast path does not apply."""


class BudgetExceeded(UnsupportedInputError):
    """A computation would exceed its configured enumeration or size budget."""


class PoleError(ArithmeticError):
    """A rational-function factor of the Hodge sum failed to divide exactly."""


class ConstructionError(ArithmeticError):
    """A family constructor produced values violating one of its identities."""
