"""The generalized Lambert series identity engine.

For nonnegative r < s, monomial parameters a_1..a_r, b_1..b_s and base q^B,
the identity equates

    [a_1,...,a_r] (q^B;q^B)^2 / [b_1,...,b_s]

with the symmetrized sum over i of

    [a_1/b_i, ..., a_r/b_i] / [b_j/b_i : j != i]
        * sum_k (-1)^((s-r)k) q^(B(s-r)k(k+1)/2) P_i^k / (1 - b_i q^(Bk))

where P_i = (a_1...a_r b_i^(s-r-1)) / prod_{j != i} b_j.  The k-th power
monomial is folded into the bilateral spec analytically, so each term costs
O(1) monomial arithmetic.  At most one parameter may carry the formal symbol.
"""
from __future__ import annotations

from dataclasses import dataclass

from .lambert import bilateral_ps, lam
from .poles import PoleSeries, multiset_union_max
from .products import (
    ZeroProductError,
    bracket_factored,
    bracket_inf,
    bracket_is_zero,
    bracket_val,
    poch_inf,
    poch_val,
)
from .rational import ONE, rat
from .rings import Monomial, QSeries, QSeriesError, first_mismatch, series_mul


class DegenerateInstanceError(QSeriesError):
    pass


@dataclass(frozen=True)
class GlsInstance:
    r: int
    s: int
    a: tuple
    b: tuple
    base: int = 1

    def __post_init__(self):
        if not (0 <= self.r < self.s):
            raise QSeriesError("need nonnegative integers r < s")
        if self.s > 6:
            raise QSeriesError("parameter count capped at s <= 6")
        if len(self.a) != self.r or len(self.b) != self.s:
            raise QSeriesError("parameter list lengths must match r and s")
        if self.base < 1:
            raise QSeriesError("base step must be a positive integer")
        formal = sum(1 for m in self.a + self.b if m.xdeg != 0)
        if formal > 1:
            raise QSeriesError("at most one parameter may carry the formal symbol")


def degeneracy_reason(inst: GlsInstance):
    """A denominator bracket that vanishes, or None for a usable instance."""
    B = inst.base
    for i, bi in enumerate(inst.b):
        if bracket_is_zero([bi], B):
            return f"[b_{i+1}] vanishes"
        for j, bj in enumerate(inst.b):
            if i != j and bracket_is_zero([bj / bi], B):
                return f"[b_{j+1}/b_{i+1}] vanishes"
    return None


def _check(inst: GlsInstance):
    reason = degeneracy_reason(inst)
    if reason is not None:
        raise DegenerateInstanceError(f"degenerate parameter configuration: {reason}")


def _slack(inst: GlsInstance) -> int:
    B = inst.base
    v = bracket_val(inst.a, B) + bracket_val(inst.b, B)
    for i, bi in enumerate(inst.b):
        v += bracket_val([inst.a[j] / bi for j in range(inst.r)], B)
        v += bracket_val([inst.b[j] / bi for j in range(inst.s) if j != i], B)
    return -min(0, v) + 2


def build_gls_lhs(inst: GlsInstance, order: int) -> PoleSeries:
    """[a's](q^B;q^B)^2 / [b's] with q^0 pole factors recorded, not inverted."""
    _check(inst)
    B = inst.base
    top = order + _slack(inst)
    den = bracket_factored(inst.b, B, top)
    num = poch_inf(Monomial(ONE, 0, B), B, top)
    num = series_mul(num, num)
    if inst.r:
        num = series_mul(num, bracket_inf(inst.a, B, top + bracket_val(inst.a, B)))
    return den.inverse_ps() * num


def build_gls_rhs(inst: GlsInstance, order: int) -> PoleSeries:
    """The idem-sum of bracket-quotient prefactors times bilateral Lambert sums."""
    _check(inst)
    B = inst.base
    sr = inst.s - inst.r
    top = order + _slack(inst)
    total = None
    for i, bi in enumerate(inst.b):
        others = [inst.b[j] for j in range(inst.s) if j != i]
        pref_den = bracket_factored([bj / bi for bj in others], B, top)
        term = pref_den.inverse_ps()
        if inst.r:
            num_args = [aj / bi for aj in inst.a]
            term = term * bracket_inf(num_args, B, top + bracket_val(num_args, B))
        power = bi.pow(sr - 1)
        for aj in inst.a:
            power = power * aj
        for bj in others:
            power = power / bj
        sign = -1 if sr % 2 else 1
        core = bilateral_ps(
            lam(
                sign=sign,
                a2=rat(B * sr, 2),
                a1=rat(B * sr, 2),
                power=power,
                den=(bi, B, 1),
            ),
            top,
        )
        term = term * core
        total = term if total is None else total + term
    return total


def verify_gls(inst: GlsInstance, order: int):
    """Build both sides, clear the common q^0 poles, compare exactly."""
    from .verify import VerificationReport

    params = {"r": inst.r, "s": inst.s, "base": inst.base}
    try:
        lhs = build_gls_lhs(inst, order)
        rhs = build_gls_rhs(inst, order)
        clearing = multiset_union_max(lhs.poles, rhs.poles)
        a = lhs.cleared(clearing)
        b = rhs.cleared(clearing)
        hi = min(a.order, b.order)
        if hi < order - 2:
            raise QSeriesError(f"window shortfall: reached {hi}, wanted {order - 2}")
        mismatch = first_mismatch(a, b, hi=hi)
    except QSeriesError as exc:
        return VerificationReport("gls", params, order, "error", message=str(exc))
    if mismatch is None:
        return VerificationReport("gls", params, order, "pass")
    return VerificationReport("gls", params, order, "fail", first_mismatch=mismatch)
