"""Exception types shared across the package.

The CLI maps these onto exit codes (see ``cli.EXIT_CODES``).
"""


class ColorCountError(Exception):
    pass


class InputError(ColorCountError, ValueError):
    """Malformed input: bad vertex id, colour outside the palette, parse failure."""


class ContractError(ColorCountError):
    """A documented precondition of an operation was violated."""


class InvalidInstanceError(ColorCountError):
    """The instance breaks |L(v)| >= deg(v)+1 somewhere."""


class UnsatisfiableError(ColorCountError):
    """The instance (or a sub-instance) admits no proper colouring."""


class CapacityError(ColorCountError):
    """The exact oracle refused an instance above its size cap."""


class DomainError(ColorCountError, ValueError):
    """Argument outside the domain of a potential/contraction-rate function."""
