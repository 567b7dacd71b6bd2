"""Exception types for domain-level failures.

Library code raises subclasses of BettiStabError for anything a caller could
plausibly trigger with bad input; plain exceptions indicate bugs.
"""


class BettiStabError(Exception):
    """Base class for all domain errors raised by this package."""


class InputError(BettiStabError):
    """Malformed input: parse failures, bad arguments, invalid data files."""


class NotEquigeneratedError(BettiStabError):
    """An operation requiring equal generator degrees got a mixed ideal."""


class ConeError(BettiStabError):
    """A diagram is not a nonnegative combination of pure diagrams."""


class StabilityError(BettiStabError):
    """Template matching, window detection, or reference comparison failed."""
