"""Exact rational scalars.

Everything in the engine is a rational number. gmpy2's mpq is used when
available (it is an order of magnitude faster than fractions.Fraction on the
small values that dominate reduction loops); otherwise we fall back to the
stdlib. Both types interoperate with Python ints, hash consistently with
their numeric value, and compare exactly, so the rest of the code never needs
to know which one it got.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as QQ

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    QQ = Fraction
    HAVE_GMPY2 = False

ZERO = QQ(0)
ONE = QQ(1)


def rational_from_string(text):
    """Parse 'a' or 'a/b' into an exact rational."""
    s = text.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        den = int(den)
        if den == 0:
            raise ValueError("zero denominator in %r" % text)
        return QQ(int(num), den)
    return QQ(int(s))


def rational_to_string(q):
    """Canonical text form: integer when integral, 'a/b' otherwise."""
    q = QQ(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def rational_to_json(q):
    """JSON value for a rational: int when integral, string 'a/b' otherwise."""
    q = QQ(q)
    if q.denominator == 1:
        return int(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def as_int(q):
    """Convert an exactly-integral rational to int; raise if it is not."""
    q = QQ(q)
    if q.denominator != 1:
        raise ValueError("expected an integer, got %s" % q)
    return int(q.numerator)
