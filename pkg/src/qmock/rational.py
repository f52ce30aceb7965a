"""Exact rational scalars with a selectable backend.

Every coefficient in this package is an exact rational; equality checks are
exact and no tolerance exists anywhere.  The default backend is gmpy2's
``mpq`` (GMP-backed, roughly an order of magnitude faster on convolution
workloads).  Setting ``QMOCK_RATIONAL_BACKEND=fractions`` selects the pure
Python ``fractions.Fraction`` fallback; both produce bit-identical results.
``qmock bench`` times the two side by side.
"""
from __future__ import annotations

import os

_requested = os.environ.get("QMOCK_RATIONAL_BACKEND", "").strip().lower()
if _requested not in ("", "gmpy2", "fractions"):
    raise ValueError(
        f"QMOCK_RATIONAL_BACKEND must be 'gmpy2' or 'fractions', got {_requested!r}"
    )

if _requested in ("", "gmpy2"):
    try:
        from gmpy2 import mpq as Rational

        BACKEND = "gmpy2"
    except ImportError:
        if _requested == "gmpy2":
            raise
        from fractions import Fraction as Rational

        BACKEND = "fractions"
else:
    from fractions import Fraction as Rational

    BACKEND = "fractions"


def rat(p, q=1):
    """Exact rational p/q."""
    return Rational(p, q)


ZERO = rat(0)
ONE = rat(1)


def rat_str(r) -> str:
    """Render a rational as 'p' or 'p/q' (never a decimal)."""
    n, d = int(r.numerator), int(r.denominator)
    return str(n) if d == 1 else f"{n}/{d}"


def is_integral(r) -> bool:
    return r.denominator == 1


def as_int(r) -> int:
    if r.denominator != 1:
        raise ValueError(f"not an integer: {r}")
    return int(r.numerator)


def sqrt_rational(r):
    """Exact positive square root of r, or None when r is not a square."""
    if r < 0:
        return None
    from math import isqrt

    n, d = int(r.numerator), int(r.denominator)
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return rat(rn, rd)
    return None
