"""Scalar backend selection.

Set ``WEYLPD_SCALAR=fraction`` to force the pure-stdlib path; the default uses
``gmpy2.mpq`` when it imports and falls back to :class:`fractions.Fraction`.
"""
import os
from fractions import Fraction

_requested = os.environ.get("WEYLPD_SCALAR", "auto").lower()

if _requested not in ("auto", "gmpy2", "fraction"):
    raise ImportError(f"WEYLPD_SCALAR must be auto, gmpy2 or fraction, got {_requested!r}")

Q = Fraction
BACKEND = "fraction"
if _requested != "fraction":
    try:
        from gmpy2 import mpq as Q  # noqa: F811
        BACKEND = "gmpy2"
    except ImportError:
        if _requested == "gmpy2":
            raise

ZERO = Q(0)
ONE = Q(1)


def to_q(x):
    """Coerce an int, Fraction, mpq or 'a/b' string to the active scalar type."""
    if isinstance(x, str):
        num, _, den = x.partition("/")
        return Q(int(num), int(den)) if den else Q(int(num))
    if isinstance(x, Fraction) and Q is not Fraction:
        return Q(x.numerator, x.denominator)
    return Q(x)
