"""Exception types shared across the package."""


class PertinvError(Exception):
    """Base class."""

    exit_code = 1


class InputError(PertinvError, ValueError):
    """Malformed or out-of-range input (CLI exit code 2)."""

    exit_code = 2


class MathAssertionError(PertinvError, ArithmeticError):
    """A mathematical consistency check failed (CLI exit code 3)."""

    exit_code = 3
