"""Exception hierarchy shared by all modules.

Each class carries a ``category`` string and an ``exit_code`` used by the
command line front end.
"""


class BgoldError(Exception):
    category = "error"
    exit_code = 1


class PrecisionExhausted(BgoldError):
    """A value cannot be certified within the available precision budget."""

    category = "precision-exhausted"
    exit_code = 2


class AmbiguityError(PrecisionExhausted):
    """A certified interval straddles a decision boundary."""

    category = "precision-ambiguous"


class CapacityError(BgoldError):
    """Requested size exceeds the configured memory/time budget."""

    category = "capacity"
    exit_code = 3


class BadArguments(BgoldError, ValueError):
    category = "bad-arguments"
    exit_code = 4


class DegenerateError(BgoldError, ValueError):
    category = "degenerate"
    exit_code = 4
