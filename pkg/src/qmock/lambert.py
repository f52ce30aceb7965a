"""Bilateral and unilateral Lambert/Appell-Lerch sums with affine weights,
quadratic q-exponents, and pole-aware denominators.

A term of a :class:`BilateralSpec` at index k is

    (alpha + beta*k) * sign^k * scale * power^k * q^(a2*k^2 + a1*k)
        / (1 - den_b * q^(den_step * k))^den_pow

optionally multiplied by a q-free prefactor polynomial.  Denominators whose
q-exponent vanishes at some k are either exact rationals (pure constants),
cancelled exactly against the prefactor, or reported as unresolved
(1 - c*x^d) pole factors alongside the series.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .poles import PoleFactor, PoleSeries, pole_atoms, sorted_atoms
from .rational import ONE, ZERO, as_int, is_integral, rat
from .rings import (
    LaurentPoly,
    Monomial,
    QSeries,
    QSeriesError,
    _div_one_minus,
    mono,
)


class LambertPoleError(QSeriesError):
    pass


class LambertSpecError(QSeriesError):
    pass


MONO_ONE = Monomial(ONE, 0, 0)


@dataclass(frozen=True)
class Range:
    """Summation range: all of Z, Z minus a finite set, or k >= start."""

    start: Optional[int] = None
    excluded: frozenset = frozenset()

    def __contains__(self, k: int) -> bool:
        if self.start is not None and k < self.start:
            return False
        return k not in self.excluded


ALL_Z = Range()
NONZERO_Z = Range(excluded=frozenset({0}))


def from_k(k0: int) -> Range:
    return Range(start=k0)


@dataclass(frozen=True)
class BilateralSpec:
    alpha: object = ONE
    beta: object = ZERO
    sign: int = 1
    a2: object = ZERO
    a1: object = ZERO
    scale: Monomial = MONO_ONE
    power: Monomial = MONO_ONE
    den_b: Optional[Monomial] = None
    den_step: int = 0
    den_pow: int = 1
    prefactor: Optional[LaurentPoly] = None
    rng: Range = ALL_Z

    def __post_init__(self):
        object.__setattr__(self, "alpha", rat(self.alpha))
        object.__setattr__(self, "beta", rat(self.beta))
        object.__setattr__(self, "a2", rat(self.a2))
        object.__setattr__(self, "a1", rat(self.a1))
        if self.sign not in (1, -1):
            raise LambertSpecError("sign must be +1 or -1")
        if self.den_pow not in (1, 2):
            raise LambertSpecError("denominator power must be 1 or 2")
        if self.a2 < 0:
            raise LambertSpecError("quadratic exponent coefficient must be >= 0")
        if self.den_b is not None and self.den_step == 0:
            raise LambertSpecError("denominator step must be nonzero")


def lam(
    alpha=1,
    beta=0,
    sign=1,
    a2=0,
    a1=0,
    scale=MONO_ONE,
    power=MONO_ONE,
    den=None,
    prefactor=None,
    rng=ALL_Z,
) -> BilateralSpec:
    """Shorthand constructor; den is (b, step) or (b, step, pow)."""
    b, step, p = (None, 0, 1)
    if den is not None:
        b, step = den[0], den[1]
        p = den[2] if len(den) > 2 else 1
    return BilateralSpec(
        alpha=rat(alpha),
        beta=rat(beta),
        sign=sign,
        a2=rat(a2),
        a1=rat(a1),
        scale=scale,
        power=power,
        den_b=b,
        den_step=step,
        den_pow=p,
        prefactor=prefactor,
        rng=rng,
    )


def _weight(spec: BilateralSpec, k: int):
    return spec.alpha + spec.beta * k


def _qexp_at(spec: BilateralSpec, k: int) -> int:
    e = spec.a2 * (k * k) + spec.a1 * k + spec.scale.qexp + spec.power.qexp * k
    if not is_integral(e):
        raise LambertSpecError(f"non-integral q-exponent at k = {k}")
    return as_int(e)


def _den_exp(spec: BilateralSpec, k: int) -> Optional[int]:
    if spec.den_b is None:
        return None
    return spec.den_b.qexp + spec.den_step * k


def _term_val(spec: BilateralSpec, k: int) -> int:
    """Exact valuation of the k-th term."""
    e = _qexp_at(spec, k)
    ue = _den_exp(spec, k)
    if ue is not None and ue < 0:
        e += spec.den_pow * (-ue)
    return e


def pole_index(spec: BilateralSpec) -> Optional[int]:
    """The unique k in range whose denominator has q-exponent 0, if any."""
    if spec.den_b is None:
        return None
    if (-spec.den_b.qexp) % spec.den_step:
        return None
    k0 = (-spec.den_b.qexp) // spec.den_step
    return k0 if k0 in spec.rng else None


def detect_q0_poles(spec: BilateralSpec):
    """Unresolved q^0 pole factors (1 - c*x^d) the sum would encounter."""
    k0 = pole_index(spec)
    if k0 is None:
        return ()
    if not _weight(spec, k0):
        return ()
    b = spec.den_b
    if b.xdeg == 0:
        return ()
    atoms = pole_atoms(b.coeff, b.xdeg) * spec.den_pow
    _, residual = _resolve_prefactor(spec.prefactor, atoms)
    return sorted_atoms(residual)


def _resolve_prefactor(prefactor: Optional[LaurentPoly], atoms):
    """Greedily divide the prefactor by pole atoms; return (quotient, residual)."""
    residual = []
    pf = prefactor
    for a in atoms:
        if pf is None:
            residual.append(a)
            continue
        try:
            pf = _div_one_minus(pf, rat(a.c), a.d)
        except QSeriesError:
            residual.append(a)
    return pf, residual


def _cutoff(spec: BilateralSpec, order: int) -> int:
    """Conservative |k| beyond which every term's valuation reaches the order."""
    c1 = abs(spec.a1 + spec.power.qexp)
    c0 = abs(spec.scale.qexp)
    if spec.den_b is not None:
        c1 += spec.den_pow * abs(spec.den_step)
        c0 += spec.den_pow * abs(spec.den_b.qexp)
    k = 0
    while spec.a2 * k * k - c1 * k - c0 < order:
        k += 1
    return k


def bilateral_sum(spec: BilateralSpec, order: int, extra_cutoff: int = 0):
    """Exact truncated sum; returns (QSeries, unresolved pole factors).

    When unresolved poles exist the returned series equals the true sum
    multiplied by the product of those factors.
    """
    rng = spec.rng
    if spec.a2 > 0:
        K = _cutoff(spec, order) + extra_cutoff
        lo_k, hi_k = -K, K
        if rng.start is not None:
            lo_k = max(lo_k, rng.start)
        ks = range(lo_k, hi_k + 1)
    else:
        if rng.start is None:
            raise LambertSpecError("a quadratic-free sum must be unilateral")
        slope = spec.a1 + spec.power.qexp
        if spec.den_b is not None and spec.den_step < 0:
            slope += spec.den_pow * (-spec.den_step)
        if slope <= 0:
            raise LambertSpecError("unilateral sum does not terminate")
        # beyond kb the term valuation is monotone with the positive slope
        kb = rng.start
        if spec.den_b is not None:
            bm, step = spec.den_b.qexp, spec.den_step
            if step > 0:
                while bm + step * kb < 0:
                    kb += 1
            else:
                while bm + step * kb > 0:
                    kb += 1
        k = rng.start
        ks = []
        while True:
            if k > kb and _term_val(spec, k) >= order:
                break
            ks.append(k)
            k += 1
        ks.extend(range(k, k + extra_cutoff))

    k0 = pole_index(spec)
    pole_terms = ()
    if k0 is not None and _weight(spec, k0):
        b = spec.den_b
        if b.xdeg == 0:
            if b.coeff == 1:
                raise LambertPoleError(f"exact pole at k = {k0}")
        else:
            pole_terms = pole_atoms(b.coeff, b.xdeg) * spec.den_pow

    pf_quot, residual = _resolve_prefactor(spec.prefactor, pole_terms)
    residual = sorted_atoms(residual)
    res_poly = None
    if residual:
        res_poly = LaurentPoly.const(1)
        for a in residual:
            res_poly = res_poly * a.poly()

    acc = {}

    def emit(qe: int, xd: int, c, pf: Optional[LaurentPoly]):
        if qe >= order:
            return
        row = acc.get(qe)
        if row is None:
            row = acc[qe] = {}
        if pf is None:
            v = row.get(xd)
            row[xd] = c if v is None else v + c
        else:
            for pd, pc in pf.terms.items():
                d = xd + pd
                v = row.get(d)
                row[d] = pc * c if v is None else v + pc * c

    sign, p = spec.sign, spec.den_pow
    vfloor = 0
    for k in ks:
        if k not in rng:
            continue
        w = _weight(spec, k)
        if not w:
            continue
        e = _qexp_at(spec, k)
        cmono = spec.scale.coeff * (spec.power.pow(k).coeff if k else ONE)
        c = w * cmono if sign == 1 or k % 2 == 0 else -w * cmono
        xd = spec.scale.xdeg + spec.power.xdeg * k
        ue = _den_exp(spec, k)
        vfloor = min(vfloor, _term_val(spec, k))
        if ue is None:
            emit(e, xd, c, spec.prefactor)
            continue
        bc, bd = spec.den_b.coeff, spec.den_b.xdeg
        if ue == 0:
            if bd == 0:
                # constant denominator (1 - bc)^p, bc != 1 checked above
                emit(e, xd, c * (1 - bc) ** -p, spec.prefactor)
            else:
                # cleared pole term: numerator times resolved prefactor part
                emit(e, xd, c, pf_quot)
            continue
        # geometric expansion, multiplied by any residual pole polynomial
        pf = spec.prefactor
        if res_poly is not None:
            pf = res_poly if pf is None else pf * res_poly
        if ue > 0:
            j = 0
            cj = c
            while e + j * ue < order:
                emit(e + j * ue, xd + j * bd, cj if p == 1 else cj * (j + 1), pf)
                j += 1
                cj = cj * bc
        else:
            bcinv = 1 / bc
            sgn = ONE if p % 2 == 0 else -ONE
            j = 0
            cj = c * sgn * bcinv**p
            while e + (p + j) * (-ue) < order:
                emit(e + (p + j) * (-ue), xd - (p + j) * bd, cj if p == 1 else cj * (j + 1), pf)
                j += 1
                cj = cj * bcinv

    lo = min(0, vfloor)
    out = QSeries.zeros(lo, order)
    for qe, row in acc.items():
        t = {d: v for d, v in row.items() if v}
        if t:
            out.coeffs[qe - lo] = LaurentPoly._raw(t)
    return out, residual


def bilateral_ps(spec: BilateralSpec, order: int) -> PoleSeries:
    qs, poles = bilateral_sum(spec, order)
    return PoleSeries(qs, poles)
