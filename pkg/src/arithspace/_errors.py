"""Exception hierarchy shared by every module."""


class ArithSpaceError(Exception):
    """Base class for all errors raised by arithspace."""


class CapacityError(ArithSpaceError):
    """Requested size exceeds the configured memory budget."""


class DomainError(ArithSpaceError, ValueError):
    """Argument outside the domain where the quantity is defined."""


class DivergenceError(ArithSpaceError, ValueError):
    """The supplied growth bound cannot certify a convergent tail."""


class RegionError(ArithSpaceError, ValueError):
    """Point lies outside the certified absolute-convergence half-plane."""


class BoundViolationError(ArithSpaceError, ValueError):
    """A table violates the growth bound it was paired with."""


class LengthMismatchError(ArithSpaceError, ValueError):
    """Two tables that must share a length do not."""


#: Largest table length any builder will allocate. Adjust with ``set_max_length``.
MAX_TABLE_LENGTH = 200_000_000


def set_max_length(n: int) -> None:
    global MAX_TABLE_LENGTH
    MAX_TABLE_LENGTH = int(n)


def check_capacity(n: int, what: str = "table") -> None:
    if n > MAX_TABLE_LENGTH:
        raise CapacityError(
            f"{what} of length {n} exceeds the memory budget ({MAX_TABLE_LENGTH})"
        )
