"""q^0 pole bookkeeping: factors (1 - c*x^d) and series that carry them.

Inverting a product of Pochhammer symbols can hit factors with q-exponent 0
and x-degree != 0; those are not units of the coefficient ring, so they are
never inverted.  Instead a :class:`PoleSeries` keeps the series with the
offending factors removed, plus the multiset of removed factors.  An identity
is checked by multiplying both sides by a common clearing polynomial, which
cancels every recorded factor exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

from .rational import ONE, Rational, rat, rat_str, sqrt_rational
from .rings import (
    LP_ONE,
    InexactDivisionError,
    LaurentPoly,
    Monomial,
    QSeries,
    _div_one_minus,
    series_add,
    series_mul,
)


@dataclass(frozen=True, order=False)
class PoleFactor:
    """The Laurent polynomial 1 - c*x^d (d != 0)."""

    c: object
    d: int

    def poly(self) -> LaurentPoly:
        return LaurentPoly({0: ONE, self.d: -rat(self.c)})

    def sort_key(self):
        c = rat(self.c)
        return (self.d, int(c.numerator), int(c.denominator))

    def __str__(self):
        return str(self.poly())


def pole_atoms(c, d: int):
    """Split (1 - c*x^d) into factors irreducible over the rationals.

    Even powers with square constants split, e.g. 1-x^2 -> (1-x)(1+x); the
    sign of d is kept as written (no unit normalization), so (1-x^-1) and
    (1-x) stay distinct factors.
    """
    c = rat(c)
    if d % 2 == 0:
        r = sqrt_rational(c)
        if r is not None:
            return pole_atoms(r, d // 2) + pole_atoms(-r, d // 2)
    return [PoleFactor(c, d)]


def multiset_union_max(p1, p2):
    """LCM of two pole multisets (max multiplicity per factor)."""
    counts = {}
    for t in (p1, p2):
        local = {}
        for a in t:
            local[a] = local.get(a, 0) + 1
        for a, n in local.items():
            counts[a] = max(counts.get(a, 0), n)
    out = []
    for a in sorted(counts, key=PoleFactor.sort_key):
        out.extend([a] * counts[a])
    return tuple(out)


def multiset_diff(big, small):
    """big minus small as multisets; None when small is not contained."""
    counts = {}
    for a in big:
        counts[a] = counts.get(a, 0) + 1
    for a in small:
        n = counts.get(a, 0)
        if n == 0:
            return None
        counts[a] = n - 1
    out = []
    for a in sorted(counts, key=PoleFactor.sort_key):
        out.extend([a] * counts[a])
    return tuple(out)


def poles_poly(atoms) -> LaurentPoly:
    p = LP_ONE
    for a in atoms:
        p = p * a.poly()
    return p


def clearing_multiplier(clearing, own) -> LaurentPoly:
    """The polynomial (prod clearing)/(prod own), exact in the Laurent ring."""
    rest = multiset_diff(clearing, own)
    if rest is not None:
        return poles_poly(rest)
    # unmatched factors may still divide up to unit monomials
    p = poles_poly(clearing)
    for a in own:
        p = _div_one_minus(p, rat(a.c), a.d)
    return p


def sorted_atoms(atoms):
    return tuple(sorted(atoms, key=PoleFactor.sort_key))


class PoleSeries:
    """A QSeries divided by a multiset of pending (1 - c*x^d) factors."""

    __slots__ = ("qs", "poles")

    def __init__(self, qs: QSeries, poles=()):
        self.qs = qs
        self.poles = sorted_atoms(poles)

    @staticmethod
    def of(qs: QSeries) -> "PoleSeries":
        return PoleSeries(qs, ())

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return PoleSeries(series_mul(self.qs, other), self.poles)
        return PoleSeries(series_mul(self.qs, other.qs), self.poles + other.poles)

    __rmul__ = __mul__

    def __add__(self, other: "PoleSeries") -> "PoleSeries":
        if isinstance(other, QSeries):
            other = PoleSeries.of(other)
        target = multiset_union_max(self.poles, other.poles)
        a = self.qs.lp_mul(clearing_multiplier(target, self.poles))
        b = other.qs.lp_mul(clearing_multiplier(target, other.poles))
        return PoleSeries(series_add(a, b), target)

    __radd__ = __add__

    def __sub__(self, other) -> "PoleSeries":
        return self + (-other)

    def __neg__(self) -> "PoleSeries":
        return PoleSeries(self.qs.neg(), self.poles)

    def scaled(self, c) -> "PoleSeries":
        return PoleSeries(self.qs.scaled(c), self.poles)

    def mono_mul(self, m: Monomial) -> "PoleSeries":
        return PoleSeries(self.qs.mono_mul(m), self.poles)

    def lp_mul(self, p: LaurentPoly) -> "PoleSeries":
        return PoleSeries(self.qs.lp_mul(p), self.poles)

    def cleared(self, clearing=None) -> QSeries:
        """The value multiplied by the clearing polynomial (default: own poles)."""
        if clearing is None:
            clearing = self.poles
        m = clearing_multiplier(clearing, self.poles)
        return self.qs if m == 1 else self.qs.lp_mul(m)
