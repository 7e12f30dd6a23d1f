"""Exceptions shared across the package."""


class QuivertiltError(Exception):
    """Base class for all package errors."""


class InputError(QuivertiltError):
    """Malformed user input: bad quiver data, unparseable files, unknown names."""


class DimensionMismatch(InputError):
    """Matrix or dimension-vector shapes do not line up."""


class BoundExceeded(QuivertiltError):
    """A bounded computation (resolution, path enumeration, iteration) ran out
    of budget before reaching a conclusive answer."""


class ConsistencyError(QuivertiltError):
    """An internal cross-check failed.  These are never swallowed: two
    independent routes to the same quantity disagreed, so the result cannot
    be trusted."""
