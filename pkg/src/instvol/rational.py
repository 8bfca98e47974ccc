"""Exact rational scalars.

All coefficients in the engine are exact rationals; no floating point enters
any core computation.  We use gmpy2's ``mpq`` when available (it is much
faster on the large numerators that iterated residues produce) and fall back
to ``fractions.Fraction`` otherwise.  Both types interoperate with Python
ints and expose ``numerator``/``denominator``, which is all the rest of the
code relies on.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq

    BACKEND = "gmpy2"

    def rat(numerator=0, denominator=1):
        """Build an exact rational from ints, strings, Fractions or mpq."""
        return _mpq(numerator, denominator)

except ImportError:  # pragma: no cover - exercised only without gmpy2
    BACKEND = "fractions"

    def rat(numerator=0, denominator=1):
        return Fraction(numerator) / Fraction(denominator)


ZERO = rat(0)
ONE = rat(1)


def rat_from_str(s: str):
    """Parse "p" or "p/q" (decimal strings) into an exact rational."""
    s = s.strip()
    if "/" in s:
        p, q = s.split("/", 1)
        return rat(int(p), int(q))
    return rat(int(s))


def rat_to_pair(r) -> tuple[str, str]:
    """Decimal-string (numerator, denominator) pair, denominator > 0."""
    return str(r.numerator), str(r.denominator)


def rat_from_pair(pair) -> object:
    return rat(int(pair[0]), int(pair[1]))


def as_fraction(r) -> Fraction:
    return Fraction(int(r.numerator), int(r.denominator))
