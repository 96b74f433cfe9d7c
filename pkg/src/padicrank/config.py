"""Working-precision policy.

All stored residues live in Z/p^N.  A computed valuation of at least
tau = N - guard base-p digits cannot be told apart from zero, so such
values are reported as "numerically zero".  The guard band [tau - 4, tau)
flags decisions that a higher-precision rerun should confirm.
"""
from __future__ import annotations

DEFAULT_PRECISION = 48
DEFAULT_GUARD = 8

# width of the band below tau in which zero/nonzero decisions are flagged
SENSITIVITY_BAND = 4


def tau(precision: int = DEFAULT_PRECISION, guard: int = DEFAULT_GUARD) -> int:
    if precision <= guard or guard < 4:
        raise ValueError(f"need precision > guard >= 4, got N={precision}, g={guard}")
    return precision - guard
