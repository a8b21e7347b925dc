"""Exception types shared across the package."""


class NumericalError(ArithmeticError):
    """A computation lost the precision or positivity it depends on."""
