"""Eulerian and Appell-Lerch forms of the mock theta functions f, omega, B,
nu2 and Ftilde, plus coefficient accessors and parity parts.

The Eulerian builders follow the defining q-hypergeometric sums term by term,
keeping the running denominator inverse incrementally.  The Appell-Lerch
builders pair a bilateral Lambert sum with an infinite-product prefactor and
agree with the Eulerian forms exactly on every tested window.
"""
from __future__ import annotations

from enum import Enum

from .lambert import NONZERO_Z, bilateral_sum, from_k, lam
from .products import poch_inf
from .rational import ZERO, is_integral, rat
from .rings import (
    Monomial,
    QSeries,
    QSeriesError,
    coeff_rat,
    expand_reciprocal,
    mono,
    mul_one_minus,
    series_inv_unit,
    series_mul,
)


class MockName(Enum):
    f = "f"
    omega = "omega"
    B = "B"
    nu2 = "nu2"
    Ftilde = "Ftilde"
    omega_even = "omega_even"
    omega_odd = "omega_odd"


def _as_name(name) -> MockName:
    if isinstance(name, MockName):
        return name
    try:
        return MockName(name)
    except ValueError:
        raise QSeriesError(f"unknown mock theta function: {name!r}") from None


def _eulerian_f(order: int) -> QSeries:
    # f(q) = sum q^(n^2) / (-q; q)_n^2
    out = QSeries.zeros(0, order)
    inv = QSeries.one(order)
    n = 0
    while n * n < order:
        if n > 0:
            inv = series_mul(inv, expand_reciprocal(mono(-1, 0, n), 2, order))
        for i, p in enumerate(inv.coeffs):
            if p.terms and n * n + i < order:
                out.coeffs[n * n + i] = out.coeffs[n * n + i] + p
        n += 1
    return out


def _eulerian_omega(order: int) -> QSeries:
    # omega(q) = sum q^(2n(n+1)) / (q; q^2)_{n+1}^2
    out = QSeries.zeros(0, order)
    inv = series_mul(
        expand_reciprocal(mono(1, 0, 1), 2, order), QSeries.one(order)
    )
    n = 0
    while 2 * n * (n + 1) < order:
        if n > 0:
            inv = series_mul(inv, expand_reciprocal(mono(1, 0, 2 * n + 1), 2, order))
        e = 2 * n * (n + 1)
        for i, p in enumerate(inv.coeffs):
            if p.terms and e + i < order:
                out.coeffs[e + i] = out.coeffs[e + i] + p
        n += 1
    return out


def _eulerian_B(order: int) -> QSeries:
    # B(q) = sum q^n (-q; q^2)_n / (q; q^2)_{n+1}
    out = QSeries.zeros(0, order)
    ratio = expand_reciprocal(mono(1, 0, 1), 1, order)
    n = 0
    while n < order:
        if n > 0:
            ratio = mul_one_minus(ratio, -1, 0, 2 * n - 1).truncated(order)
            ratio = series_mul(ratio, expand_reciprocal(mono(1, 0, 2 * n + 1), 1, order))
        for i, p in enumerate(ratio.coeffs):
            if p.terms and n + i < order:
                out.coeffs[n + i] = out.coeffs[n + i] + p
        n += 1
    return out


def _eulerian_nu2(order: int) -> QSeries:
    # built literally from its display: the weighted bilateral sum, the
    # constant -1/4, and the unilateral correction, all over (q)_inf^3
    core, _ = bilateral_sum(
        lam(alpha=0, beta=-1, sign=-1, a2=rat(1, 2), a1=rat(1, 2),
            den=(mono(1, 0, 0), 1), rng=NONZERO_Z),
        order,
    )
    tail, _ = bilateral_sum(
        lam(power=mono(1, 0, 1), den=(mono(-1, 0, 0), 1, 2), rng=from_k(1)), order
    )
    inner = core + QSeries.const(rat(-1, 4), order) + tail.scaled(-2)
    e = poch_inf(mono(1, 0, 1), 1, order)
    inv = series_inv_unit(series_mul(series_mul(e, e), e))
    return series_mul(inv, inner)


def _eulerian_Ftilde(order: int) -> QSeries:
    core, _ = bilateral_sum(
        lam(a2=rat(1, 2), a1=rat(1, 2), den=(mono(-1, 0, 0), 1)), order
    )
    e = poch_inf(mono(1, 0, 1), 1, order)
    em = poch_inf(mono(-1, 0, 1), 1, order)
    inv = series_inv_unit(series_mul(e, series_mul(em, em)))
    return series_mul(inv, core)


def eulerian_series(name, order: int) -> QSeries:
    """Defining q-hypergeometric sum of the named function, truncated."""
    name = _as_name(name)
    if name is MockName.f:
        return _eulerian_f(order)
    if name is MockName.omega:
        return _eulerian_omega(order)
    if name is MockName.B:
        return _eulerian_B(order)
    if name is MockName.nu2:
        return _eulerian_nu2(order)
    if name is MockName.Ftilde:
        return _eulerian_Ftilde(order)
    if name is MockName.omega_even:
        return parity_part(_eulerian_omega(order), "even")
    return parity_part(_eulerian_omega(order), "odd")


def appell_form(name, order: int) -> QSeries:
    """Appell-Lerch representation of f, omega or B."""
    name = _as_name(name)
    if name is MockName.f:
        core, _ = bilateral_sum(
            lam(sign=-1, a2=rat(3, 2), a1=rat(1, 2), den=(mono(-1, 0, 0), 1)), order
        )
        inv = series_inv_unit(poch_inf(mono(1, 0, 1), 1, order))
        return series_mul(inv, core).scaled(2)
    if name is MockName.omega:
        core, _ = bilateral_sum(
            lam(sign=-1, a2=3, a1=3, den=(mono(1, 0, 1), 2)), order
        )
        inv = series_inv_unit(poch_inf(mono(1, 0, 2), 2, order))
        return series_mul(inv, core)
    if name is MockName.B:
        core, _ = bilateral_sum(
            lam(sign=-1, a2=2, a1=3, den=(mono(1, 0, 1), 4)), order
        )
        prod = series_mul(
            series_mul(poch_inf(mono(1, 0, 1), 4, order), poch_inf(mono(1, 0, 3), 4, order)),
            poch_inf(mono(1, 0, 4), 4, order),
        )
        return series_mul(series_inv_unit(prod), core)
    raise QSeriesError(f"no Appell-Lerch form registered for {name.value}")


def parity_part(a: QSeries, parity: str) -> QSeries:
    """Even or odd q-powers of an x-free series."""
    if not a.is_xfree():
        raise QSeriesError("parity of bivariate series undefined")
    if parity not in ("even", "odd"):
        raise QSeriesError("parity must be 'even' or 'odd'")
    keep = 0 if parity == "even" else 1
    out = QSeries.zeros(a.val, a.order)
    for i, p in enumerate(a.coeffs):
        if p.terms and (a.val + i) % 2 == keep:
            out.coeffs[i] = p
    return out


def negated_q(a: QSeries) -> QSeries:
    """Substitute q -> -q (flip the sign of odd coefficients)."""
    out = QSeries.zeros(a.val, a.order)
    for i, p in enumerate(a.coeffs):
        if p.terms:
            out.coeffs[i] = p if (a.val + i) % 2 == 0 else -p
    return out


_cache: dict = {}


def cached_series(name, min_order: int) -> QSeries:
    """Eulerian series cached and grown geometrically."""
    name = _as_name(name)
    cur = _cache.get(name)
    if cur is None or cur.order < min_order:
        n = 64
        while n < min_order:
            n *= 2
        cur = eulerian_series(name, n)
        _cache[name] = cur
    return cur


def coeff_c(name, n) -> object:
    """c(name; n): the q^n coefficient; 0 for negative or non-integral n."""
    n = rat(n)
    if not is_integral(n) or n < 0:
        return ZERO
    k = int(n.numerator)
    return coeff_rat(cached_series(name, k + 1), k)
