"""q-Pochhammer symbols, infinite products, and theta brackets.

All arguments are monomials c*x^d*q^m; the base is q^B for a positive integer
step B.  (a; q^B)_n multiplies the factors (1 - a*q^(B*k)) for k < n, and the
bracket [a1,...,am; q^B] is the product of (ai; q^B)_inf (q^B/ai; q^B)_inf.
A product containing a factor that is exactly zero ([q^(B*k)] configurations)
is returned as a flagged zero, since vanishing brackets occur structurally.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .poles import PoleFactor, PoleSeries, pole_atoms, sorted_atoms
from .rational import ONE, rat
from .rings import (
    LaurentPoly,
    Monomial,
    QSeries,
    QSeriesError,
    WindowError,
    mul_one_minus,
    series_inv_unit,
    series_mul,
)


class ZeroProductError(QSeriesError):
    pass


@dataclass(frozen=True)
class ProductSpec:
    """(arg; q^step)_length with length None meaning the infinite product."""

    arg: Monomial
    step: int = 1
    length: Optional[int] = None


def product(spec: ProductSpec, order: int) -> QSeries:
    if spec.length is None:
        return poch_inf(spec.arg, spec.step, order)
    return poch_finite(spec.arg, spec.length, spec.step, order)


def poch_is_zero(a: Monomial, step: int) -> bool:
    """True when (a; q^step)_inf contains a factor 1 - q^0...  i.e. vanishes."""
    return a.coeff == 1 and a.xdeg == 0 and a.qexp <= 0 and a.qexp % step == 0


def bracket_is_zero(args, step: int) -> bool:
    """[a]_inf vanishes exactly when a is a power of the base q^step."""
    return any(a.coeff == 1 and a.xdeg == 0 and a.qexp % step == 0 for a in args)


def poch_val(a: Monomial, step: int) -> int:
    """Valuation of (a; q^step)_inf: the negative-exponent factors contribute."""
    v = 0
    e = a.qexp
    while e < 0:
        v += e
        e += step
    return v


def bracket_val(args, step: int) -> int:
    return sum(poch_val(a, step) + poch_val(Monomial(ONE, 0, step) / a, step) for a in args)


def _factor_list(a: Monomial, step: int, hi: int):
    """Exponent/argument pairs (c, d, e) of the factors of (a;q^step)_inf with e < hi."""
    out = []
    e = a.qexp
    while e < hi:
        out.append((a.coeff, a.xdeg, e))
        e += step
    return out


def poch_finite(a: Monomial, n: int, step: int, order: int) -> QSeries:
    """(a; q^step)_n as an exact polynomial, truncated at the given order."""
    if n < 0:
        raise QSeriesError("finite Pochhammer length must be nonnegative")
    facs = sorted(((a.coeff, a.xdeg, a.qexp + step * k) for k in range(n)), key=lambda f: f[2])
    v = sum(min(0, e) for _, _, e in facs)
    if order <= v:
        raise WindowError("empty truncation window")
    out = QSeries.one(order - v)
    for c, d, e in facs:
        out = mul_one_minus(out, c, d, e)
        if out.order > order:
            out = out.truncated(order)
    return out


def poch_inf(a: Monomial, step: int, order: int) -> QSeries:
    """(a; q^step)_inf truncated below q^order; flagged zero when it vanishes."""
    if step <= 0:
        raise QSeriesError("base step must be a positive integer")
    if poch_is_zero(a, step):
        return QSeries.zeros(0, order)
    v = poch_val(a, step)
    if order <= v:
        raise WindowError("empty truncation window")
    out = QSeries.one(order - v)
    for c, d, e in _factor_list(a, step, order - v):
        out = mul_one_minus(out, c, d, e)
        if out.order > order:
            out = out.truncated(order)
    return out


def bracket_inf(args, step: int, order: int) -> QSeries:
    """[a1, ..., am; q^step]_inf; flagged zero propagates."""
    args = list(args)
    if bracket_is_zero(args, step):
        return QSeries.zeros(0, order)
    qb = Monomial(ONE, 0, step)
    pochs = []
    for a in args:
        pochs.append(a)
        pochs.append(qb / a)
    vals = [poch_val(p, step) for p in pochs]
    vtot = sum(vals)
    out = None
    for p, v in zip(pochs, vals):
        s = poch_inf(p, step, order - vtot + v)
        out = s if out is None else series_mul(out, s)
    return out if out is not None else QSeries.one(order)


@dataclass(frozen=True)
class Factored:
    """A product of Pochhammer symbols split for exact inversion.

    value = mono * const * prod(poles as polynomials) * regular, where regular
    has constant leading coefficient 1 at q^0 and is therefore invertible.
    """

    mono: Monomial
    const: object
    poles: tuple
    regular: QSeries

    def inverse_ps(self) -> PoleSeries:
        inv = series_inv_unit(self.regular).scaled(1 / rat(self.const))
        return PoleSeries(inv.mono_mul(self.mono.inv()), self.poles)

    def value(self) -> QSeries:
        out = self.regular.lp_mul(_poles_poly(self.poles)) if self.poles else self.regular
        return out.scaled(rat(self.const)).mono_mul(self.mono)


def _poles_poly(atoms) -> LaurentPoly:
    p = LaurentPoly.const(1)
    for a in atoms:
        p = p * a.poly()
    return p


def poch_factored(a: Monomial, step: int, order: int, n: Optional[int] = None) -> Factored:
    """Split (a;q^step)_n (default n = inf) into unit, constant, q^0 poles and
    a regular series; raises ZeroProductError on a vanishing factor."""
    if n is None:
        if poch_is_zero(a, step):
            raise ZeroProductError("product is identically zero")
        facs = _factor_list(a, step, order)
    else:
        facs = [(a.coeff, a.xdeg, a.qexp + step * k) for k in range(n)]
    mono = Monomial(ONE, 0, 0)
    const = ONE
    poles = []
    reg = QSeries.one(order)
    for c, d, e in facs:
        if e > 0:
            if e < order:
                reg = mul_one_minus(reg, c, d, e).truncated(order)
        elif e == 0:
            if d == 0:
                if c == 1:
                    raise ZeroProductError("product is identically zero")
                const = const * (1 - c)
            else:
                poles.extend(pole_atoms(c, d))
        else:
            # 1 - c x^d q^e = (-c x^d q^e) (1 - (1/c) x^-d q^-e)
            mono = mono * Monomial(-c, d, e)
            if -e < order:
                reg = mul_one_minus(reg, 1 / rat(c), -d, -e).truncated(order)
    return Factored(mono, const, sorted_atoms(poles), reg)


def prod_factored(parts, order: int) -> Factored:
    """Combine factored Pochhammers/brackets; parts as Factored instances."""
    mono = Monomial(ONE, 0, 0)
    const = ONE
    poles = []
    reg = None
    for f in parts:
        mono = mono * f.mono
        const = const * f.const
        poles.extend(f.poles)
        reg = f.regular if reg is None else series_mul(reg, f.regular).truncated(order)
    if reg is None:
        reg = QSeries.one(order)
    return Factored(mono, const, sorted_atoms(poles), reg)


def bracket_factored(args, step: int, order: int) -> Factored:
    qb = Monomial(ONE, 0, step)
    parts = []
    for a in args:
        parts.append(poch_factored(a, step, order))
        parts.append(poch_factored(qb / a, step, order))
    return prod_factored(parts, order)
