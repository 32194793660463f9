"""Exact-rational helpers: canonical "num/den" serialization.

All arithmetic in the package uses fractions.Fraction; floats never enter
any certification path.  Rationals are serialized as "num/den" with an
explicit denominator so files round-trip bit-exactly.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def fmt(q: Fraction) -> str:
    """Serialize a rational as "num/den" (denominator always explicit)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse(text: str) -> Fraction:
    """Parse a "num/den" string produced by fmt()."""
    num, _, den = text.partition("/")
    if not den:
        raise ValueError(f"not a num/den rational: {text!r}")
    return Fraction(int(num), int(den))
