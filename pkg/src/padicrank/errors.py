"""Exceptions shared across the package."""


class PadicRankError(Exception):
    """Base class for all package errors."""


class PrecisionExhausted(PadicRankError):
    """A quantity is indistinguishable from zero at the working precision,
    or a zero/nonzero decision fell inside the guard band."""


class TruncationInsufficient(PadicRankError):
    """A truncated series cannot be evaluated at the requested character
    because discarded terms may be too large."""


class NotAUnitSeries(PadicRankError):
    """Weierstrass preparation needs a unit coefficient after stripping
    the exact power of p; none was found within precision."""


class SizeCapExceeded(PadicRankError):
    """A direct coinvariant-rank computation would exceed the configured
    size cap."""


class TorsionAssumptionViolated(PadicRankError):
    """All four Coleman determinants vanish within truncation, so the
    scenario carries no usable data."""


class InvalidInput(PadicRankError):
    """Malformed or inconsistent user input (CLI / file layer)."""
