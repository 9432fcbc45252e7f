"""Exact rational arithmetic.

All coefficients in this package are exact rationals: arbitrary-precision
integers over a positive denominator, always in lowest terms.  gmpy2's mpq
is used when available (an order of magnitude faster on elimination-heavy
workloads); the stdlib Fraction is a drop-in fallback with identical
semantics for everything we rely on (normalization, hashing, comparisons).
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as QQ  # type: ignore[import-untyped]

    _BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as QQ  # type: ignore[assignment]

    _BACKEND = "fractions"

ZERO = QQ(0)
ONE = QQ(1)


def qq(value, den=None):
    """Coerce to an exact rational.  Accepts ints, rationals and 'p/q' strings."""
    if den is not None:
        return QQ(value, den)
    if isinstance(value, str):
        if "/" in value:
            num, d = value.split("/", 1)
            return QQ(int(num), int(d))
        return QQ(int(value))
    return QQ(value)


def qq_str(value) -> str:
    """Canonical text form: 'p' or 'p/q' with q > 1."""
    num, den = value.numerator, value.denominator
    return str(num) if den == 1 else f"{num}/{den}"


def backend() -> str:
    return _BACKEND
