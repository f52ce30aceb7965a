"""The identity registry: every displayed identity as a named, buildable
LHS/RHS pair with pole-clearing data.

Builders return :class:`PoleSeries`; the verifier multiplies both sides by
the least common multiple of their recorded q^0 pole factors and compares
coefficients exactly.  Parameterized entries ship with a fixed instance
list for reproducibility.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .gls import GlsInstance, build_gls_lhs, build_gls_rhs
from .lambert import NONZERO_Z, bilateral_ps, from_k, lam
from .mockforms import cached_series, negated_q
from .poles import PoleFactor, PoleSeries, sorted_atoms
from .products import (
    bracket_factored,
    bracket_inf,
    bracket_val,
    poch_factored,
    poch_inf,
    poch_val,
    prod_factored,
)
from .divisors import positive_divisor_pairs, rtilde_n
from .rational import ONE, rat
from .rings import (
    LaurentPoly,
    Monomial,
    QSeries,
    expand_reciprocal,
    mono,
    series_mul,
)

X = mono(1, 1, 0)
R12, R32 = rat(1, 2), rat(3, 2)
ONE_MINUS_X = LaurentPoly({0: rat(1), 1: rat(-1)})


def Q(m):
    return mono(1, 0, m)


def NQ(m):
    return mono(-1, 0, m)


def P(a, step):
    return ("poch", a, step)


def BR(args, step):
    return ("br", tuple(args), step)


def E(step):
    return ("poch", Q(step), step)


def _fval(f):
    kind, payload, step = f
    if kind == "poch":
        return poch_val(payload, step)
    return bracket_val(payload, step)


def num_series(order, factors) -> QSeries:
    vals = [_fval(f) for f in factors]
    vtot = sum(vals)
    out = None
    for f, v in zip(factors, vals):
        kind, payload, step = f
        top = order - vtot + v
        s = poch_inf(payload, step, top) if kind == "poch" else bracket_inf(payload, step, top)
        out = s if out is None else series_mul(out, s)
    return out if out is not None else QSeries.one(order)


def den_ps(order, factors) -> PoleSeries:
    parts = []
    for kind, payload, step in factors:
        if kind == "poch":
            parts.append(poch_factored(payload, step, order))
        else:
            qb = Q(step)
            for a in payload:
                parts.append(poch_factored(a, step, order))
                parts.append(poch_factored(qb / a, step, order))
    return prod_factored(parts, order).inverse_ps()


def quotient(order, num=(), den=(), scale: Optional[Monomial] = None, const=None) -> PoleSeries:
    ps = den_ps(order, den) if den else PoleSeries.of(QSeries.one(order))
    if num:
        ps = ps * num_series(order, num)
    if scale is not None:
        ps = ps.mono_mul(scale)
    if const is not None:
        ps = ps.scaled(rat(const))
    return ps


def LS(order, **kw) -> PoleSeries:
    return bilateral_ps(lam(**kw), order)


def geom(order, c0: int, den_sign: int, step: int) -> PoleSeries:
    """sum_{m>=0} q^(c0+step*m) / (1 - den_sign*q^(c0+step*m))."""
    return LS(
        order,
        scale=Q(c0),
        power=Q(step),
        den=(mono(den_sign, 0, c0), step),
        rng=from_k(0),
    )


def const_ps(c, order) -> PoleSeries:
    return PoleSeries.of(QSeries.const(rat(c), order))


def mock_ps(name, order) -> PoleSeries:
    return PoleSeries.of(cached_series(name, order).truncated(order))


def omega_neg_ps(order) -> PoleSeries:
    return PoleSeries.of(negated_q(cached_series("omega", order)).truncated(order))


# ---------------------------------------------------------------------------
# entry type
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityEntry:
    name: str
    lhs: Callable
    rhs: Callable
    param_grid: tuple = ()
    clearing: Optional[tuple] = None
    formal: Optional[str] = None
    margin: int = 12
    order_cap: Optional[int] = None
    note: str = ""

    def instances(self):
        return self.param_grid if self.param_grid else ({},)

    def order_for(self, requested: int) -> int:
        return min(requested, self.order_cap) if self.order_cap else requested

    def normalize_params(self, params, unsafe: bool = False):
        params = dict(params or {})
        if not self.param_grid:
            if params:
                raise ValueError(f"identity {self.name!r} takes no parameters")
            return {}
        if not params:
            return dict(self.param_grid[0])
        want = set(self.param_grid[0])
        if set(params) != want:
            raise ValueError(
                f"identity {self.name!r} expects parameters {sorted(want)}"
            )
        if not unsafe and params not in [dict(p) for p in self.param_grid]:
            raise ValueError(
                f"parameters {params} not in the fixed instance list of {self.name!r}"
                " (use --unsafe-params to override)"
            )
        return params


_ENTRIES: dict = {}


def _register(entry: IdentityEntry):
    _ENTRIES[entry.name] = entry


def all_entries():
    return list(_ENTRIES.values())


def lookup(name: str):
    return _ENTRIES.get(name)


LJ_GRID = ({"l": 1, "j": -3}, {"l": 1, "j": -1}, {"l": 1, "j": 0}, {"l": 1, "j": 1}, {"l": 2, "j": 1})
M_GRID = ({"m": 0}, {"m": 1}, {"m": 2})


# ---------------------------------------------------------------------------
# theta-product identities (qtp1, qtp2)
# ---------------------------------------------------------------------------


def _qtp1_lhs(order):
    return LS(order, alpha=1, beta=6, a2=R32, a1=R12)


def _qtp1_rhs(order):
    return quotient(order, num=[E(1), E(1), E(1)], den=[P(NQ(1), 1), P(NQ(1), 1)])


_register(IdentityEntry("qtp1", _qtp1_lhs, _qtp1_rhs))


def _qtp2_lhs(order):
    return LS(order, alpha=1, beta=3, a2=3, a1=2)


def _qtp2_rhs(order):
    return quotient(order, num=[E(2), E(2), E(2)], den=[P(NQ(1), 2), P(NQ(1), 2)])


_register(IdentityEntry("qtp2", _qtp2_lhs, _qtp2_rhs))


# ---------------------------------------------------------------------------
# Appell-Lerch forms of f, omega (mockf, om00)
# ---------------------------------------------------------------------------


def _mockf_lhs(order):
    return mock_ps("f", order)


def _mockf_rhs(order):
    core = LS(order, sign=-1, a2=R32, a1=R12, den=(NQ(0), 1))
    return quotient(order, den=[P(Q(1), 1)], const=2) * core.qs


_register(IdentityEntry("mockf", _mockf_lhs, _mockf_rhs))


def _om00_lhs(order):
    return mock_ps("omega", order)


def _om00_rhs(order):
    core = LS(order, sign=-1, a2=3, a1=3, den=(Q(1), 2))
    return quotient(order, den=[E(2)]) * core.qs


_register(IdentityEntry("om00", _om00_lhs, _om00_rhs))


# ---------------------------------------------------------------------------
# the two Fine identities (12.2.3), (12.2.5)
# ---------------------------------------------------------------------------


def _fine1223_lhs(order):
    out = QSeries.one(order)
    term = QSeries.one(order)
    n = 1
    while n * n < order:
        term = series_mul(term, expand_reciprocal(mono(1, 1, n), 1, order))
        term = series_mul(term, expand_reciprocal(mono(1, -1, n), 1, order))
        for i, p in enumerate(term.coeffs):
            if p.terms and n * n + i < order:
                out.coeffs[n * n + i] = out.coeffs[n * n + i] + p
        n += 1
    return PoleSeries.of(out)


def _fine1223_rhs(order):
    core = bilateral_ps(
        lam(sign=-1, a2=R32, a1=R12, den=(X, 1), prefactor=ONE_MINUS_X), order
    )
    return quotient(order, den=[P(Q(1), 1)]) * core


_register(
    IdentityEntry(
        "fine-12.2.3", _fine1223_lhs, _fine1223_rhs, formal="x of (12.2.3)", order_cap=120
    )
)


def _fine1225_lhs(order):
    term = series_mul(
        expand_reciprocal(mono(1, 1, 1), 1, order), expand_reciprocal(mono(1, -1, 1), 1, order)
    )
    out = QSeries.zeros(0, order)
    n = 0
    while 2 * n * (n + 1) < order:
        if n > 0:
            term = series_mul(term, expand_reciprocal(mono(1, 1, 2 * n + 1), 1, order))
            term = series_mul(term, expand_reciprocal(mono(1, -1, 2 * n + 1), 1, order))
        e = 2 * n * (n + 1)
        for i, p in enumerate(term.coeffs):
            if p.terms and e + i < order:
                out.coeffs[e + i] = out.coeffs[e + i] + p
        n += 1
    return PoleSeries.of(out)


def _fine1225_rhs(order):
    core = LS(order, sign=-1, a2=3, a1=3, den=(mono(1, 1, 1), 2))
    return quotient(order, den=[E(2)]) * core


_register(
    IdentityEntry(
        "fine-12.2.5", _fine1225_lhs, _fine1225_rhs, formal="x of (12.2.5)", order_cap=120
    )
)


# ---------------------------------------------------------------------------
# Lemma identities (lat2), (lat3) and proof intermediates (at4)-(at8)
# ---------------------------------------------------------------------------


def _lat2_lhs(order):
    pre = quotient(order, num=[E(1), E(1)], den=[P(NQ(1), 1), P(NQ(1), 1)])
    return pre * LS(order, sign=-1, a2=R32, a1=R12, den=(X, 1))


def _lat2_rhs(order):
    t1 = quotient(
        order,
        num=[E(1), E(1), E(2), E(2)],
        den=[BR([mono(-1, 1, 0)], 1), BR([mono(1, 2, 0)], 2)],
        scale=mono(4, 1, 0),
    )
    t2 = LS(order, a2=R32, a1=R12, den=(mono(-1, 1, 0), 1, 2)).scaled(2)
    t3 = LS(order, alpha=-1, beta=6, a2=R32, a1=R12, den=(mono(-1, 1, 0), 1))
    return t1 + t2 + t3


_register(
    IdentityEntry(
        "lat2",
        _lat2_lhs,
        _lat2_rhs,
        clearing=sorted_atoms([PoleFactor(rat(1), 1), PoleFactor(rat(-1), 1), PoleFactor(rat(-1), 1)]),
        formal="x",
        order_cap=120,
    )
)


def _lat3_lhs(order):
    pre = quotient(order, num=[E(2), E(2)], den=[P(NQ(1), 2), P(NQ(1), 2)], scale=Q(1))
    return pre * LS(order, sign=-1, a2=3, a1=3, den=(X, 2))


def _lat3_rhs(order):
    t1 = quotient(
        order,
        num=[E(2), E(2), E(2), E(2), P(NQ(1), 2), P(NQ(1), 2)],
        den=[BR([X, mono(-1, 1, 1), mono(-1, 1, 1)], 2)],
        scale=mono(1, -1, 1),
    )
    t2 = LS(order, a2=3, den=(mono(-1, 1, -1), 2, 2))
    t3 = LS(order, alpha=-1, beta=3, a2=3, den=(mono(-1, 1, -1), 2))
    return t1 + t2 + t3


_register(
    IdentityEntry(
        "lat3",
        _lat3_lhs,
        _lat3_rhs,
        clearing=sorted_atoms([PoleFactor(rat(1), 1)]),
        formal="x",
        order_cap=120,
    )
)


def _at4_lhs(order, m):
    w = NQ(m)
    return quotient(
        order,
        num=[E(1), E(1), BR([mono(-1, 1, 0), mono(1, -2, 0)], 1)],
        den=[BR([w, mono(1, -1, m + 1), mono(1, 1, m)], 1)],
        scale=X,
    )


def _at4_rhs(order, m):
    w = NQ(m)
    t1 = quotient(order, num=[BR([mono(1, -2, 0)], 1)], den=[BR([mono(-1, -1, 0)], 1)])
    t1 = t1 * LS(order, sign=-1, a2=R32, a1=R12, den=(w, 1))
    t2 = LS(order, a2=R32, a1=R12, scale=mono(1, -1, 0), power=mono(1, -3, 0), den=(mono(1, -1, m), 1))
    t3 = LS(order, a2=R32, a1=R12, power=mono(1, 3, 0), den=(mono(1, 1, m), 1))
    return t1 + t2 - t3


_register(
    IdentityEntry(
        "at4", _at4_lhs, _at4_rhs, param_grid=M_GRID,
        formal="a (differentiation parameter); paper's x set to -q^m", order_cap=120,
    )
)


def _at3_lhs(order, m):
    w = NQ(m)
    return quotient(
        order,
        num=[E(1), E(1), BR([mono(-1, 1, 0), mono(1, -2, 0)], 1)],
        den=[BR([w, mono(1, -1, m), mono(1, 1, m)], 1)],
    )


def _at3_rhs(order, m):
    w = NQ(m)
    t1 = quotient(order, num=[BR([mono(1, -2, 0)], 1)], den=[BR([mono(-1, -1, 0)], 1)])
    t1 = t1 * LS(order, sign=-1, a2=R32, a1=R32, den=(w, 1))
    t2 = LS(order, a2=R32, a1=R32, scale=mono(1, -2, 0), power=mono(1, -3, 0), den=(mono(1, -1, m), 1))
    t3 = LS(order, a2=R32, a1=R32, scale=X, power=mono(1, 3, 0), den=(mono(1, 1, m), 1))
    return t1 - t2 + t3


_register(
    IdentityEntry(
        "at3", _at3_lhs, _at3_rhs, param_grid=M_GRID,
        formal="a (differentiation parameter); paper's x set to -q^m", order_cap=120,
    )
)


def _at6_lhs(order, m):
    w = NQ(m)
    return quotient(
        order,
        num=[E(2), E(2), BR([mono(-1, -1, -1), mono(1, 2, 2)], 2)],
        den=[BR([w, mono(1, 1, m + 1), mono(1, -1, m - 1)], 2)],
    )


def _at6_rhs(order, m):
    t1 = quotient(order, num=[BR([mono(1, 2, 2)], 2)], den=[BR([mono(-1, 1, 1)], 2)])
    t1 = t1 * LS(order, sign=-1, a2=3, a1=3, den=(NQ(m), 2))
    t2 = LS(order, a2=3, scale=mono(1, -1, -1), power=mono(1, 3, 0), den=(mono(1, 1, m - 1), 2))
    t3 = LS(order, a2=3, scale=mono(1, -1, -1), power=mono(1, -3, 0), den=(mono(1, -1, m - 1), 2))
    return t1 - t2 + t3


_register(
    IdentityEntry(
        "at6", _at6_lhs, _at6_rhs, param_grid=M_GRID,
        formal="b (differentiation parameter); paper's x set to -q^m", order_cap=120,
        margin=16,
    )
)


def _at8_lhs(order):
    return quotient(
        order,
        num=[E(1), E(1), E(1), E(1), P(NQ(1), 1), P(NQ(1), 1)],
        den=[BR([X, mono(-1, 1, 1), mono(-1, 1, 0)], 1)],
        const=4,
    )


def _at8_rhs(order):
    t1 = quotient(order, num=[E(1), E(1)], den=[P(NQ(1), 1), P(NQ(1), 1)])
    t1 = t1 * LS(order, sign=-1, a2=R32, a1=R12, den=(X, 1))
    p2 = LS(order, a2=R32, a1=R12, den=(mono(-1, 1, 0), 1, 2))
    w1 = LS(order, alpha=0, beta=3, a2=R32, a1=R12, den=(mono(-1, 1, 0), 1))
    w2 = LS(order, alpha=-1, beta=3, a2=R32, a1=R12, den=(mono(-1, 1, 0), 1))
    return t1 - (p2 + w1) - (p2 + w2)


_register(
    IdentityEntry(
        "at8",
        _at8_lhs,
        _at8_rhs,
        clearing=sorted_atoms([PoleFactor(rat(1), 1), PoleFactor(rat(-1), 1), PoleFactor(rat(-1), 1)]),
        formal="x",
        order_cap=120,
    )
)


def _at7_lhs(order):
    return quotient(
        order,
        num=[E(2), E(2), E(2), E(2), BR([NQ(-1)], 2)],
        den=[BR([X, mono(-1, 1, 1), mono(-1, 1, -1)], 2)],
        const=2,
    )


def _at7_rhs(order):
    t1 = quotient(order, num=[E(2), E(2)], den=[BR([NQ(1)], 2)], const=2)
    t1 = t1 * LS(order, sign=-1, a2=3, a1=3, den=(X, 2))
    p2 = LS(order, a2=3, scale=Q(-1), den=(mono(-1, 1, -1), 2, 2))
    w1 = LS(order, alpha=-2, beta=3, a2=3, scale=Q(-1), den=(mono(-1, 1, -1), 2))
    w2 = LS(order, alpha=0, beta=3, a2=3, scale=Q(-1), den=(mono(-1, 1, -1), 2))
    return t1 - (p2 + w1) - (p2 + w2)


_register(
    IdentityEntry(
        "at7",
        _at7_lhs,
        _at7_rhs,
        clearing=sorted_atoms([PoleFactor(rat(1), 1)]),
        formal="x",
        order_cap=120,
        margin=16,
    )
)


# ---------------------------------------------------------------------------
# Corollary identities (c6), (c5) and their rearrangements (e1), (e2)
# ---------------------------------------------------------------------------


def _c6_lhs(order):
    pre = quotient(order, num=[E(1), E(1), E(1)], den=[P(NQ(1), 1), P(NQ(1), 1)])
    return pre * mock_ps("f", order)


def _c6_rhs(order):
    eis1 = LS(order, power=Q(1), den=(Q(0), 1, 2), rng=from_k(1)).scaled(-4)
    eis2 = LS(order, power=Q(2), den=(Q(0), 2, 2), rng=from_k(1)).scaled(-16)
    pent2 = LS(order, a2=R32, a1=R12, den=(Q(0), 1, 2), rng=NONZERO_Z).scaled(4)
    pent1 = LS(order, alpha=-1, beta=6, a2=R32, a1=R12, den=(Q(0), 1), rng=NONZERO_Z).scaled(2)
    return eis1 + eis2 + const_ps(1, order) + pent2 + pent1


_register(IdentityEntry("c6", _c6_lhs, _c6_rhs))


def _c5_lhs(order):
    pre = quotient(
        order, num=[E(2), E(2), E(2)], den=[P(NQ(1), 2), P(NQ(1), 2)], scale=Q(1)
    )
    return pre * omega_neg_ps(order)


def _c5_rhs(order):
    t1 = LS(order, scale=Q(1), power=Q(2), den=(NQ(1), 2, 2), rng=from_k(0))
    t2 = LS(order, power=Q(2), den=(Q(0), 2, 2), rng=from_k(1)).scaled(-2)
    t3 = LS(order, a2=3, den=(Q(0), 2, 2), rng=NONZERO_Z)
    t4 = LS(order, alpha=-1, beta=3, a2=3, den=(Q(0), 2), rng=NONZERO_Z)
    return t1 + t2 + t3 + t4


_register(IdentityEntry("c5", _c5_lhs, _c5_rhs))


def _e1_rhs(order):
    out = QSeries.zeros(0, order)
    acc = [rat(0)] * order
    acc[0] = rat(1)
    n = 1
    while n < order:
        m = 1
        while m * n < order:
            acc[m * n] -= 4 * n
            m += 1
        m = 1
        while 2 * m * n < order:
            acc[2 * m * n] -= 16 * n
            m += 1
        n += 1
    n = 1
    while n * (3 * n + 1) // 2 < order:
        m = 1
        while n * (3 * n - 1 + 2 * m) % 2 == 0 and n * (3 * n - 1 + 2 * m) // 2 < order:
            acc[n * (3 * n - 1 + 2 * m) // 2] += 4 * (6 * n + 2 * m - 1)
            m += 1
        n += 1
    for e, c in enumerate(acc):
        if c:
            out.coeffs[e] = LaurentPoly.const(c)
    return PoleSeries.of(out)


_register(IdentityEntry("e1", _c6_lhs, _e1_rhs))


def _e2_rhs(order):
    out = QSeries.zeros(0, order)
    for n in range(1, order):
        c = 6 * rtilde_n(n)
        for a, b in positive_divisor_pairs(n):
            if (a + b) % 2 == 0:
                if a > 3 * b:
                    c += a
                if a > 3 * b - 2:
                    c += 3 * b
        if c:
            out.coeffs[n] = LaurentPoly.const(c)
    return PoleSeries.of(out)


_register(IdentityEntry("e2", _c5_lhs, _e2_rhs))


# ---------------------------------------------------------------------------
# Theorem 2.3 family (idt5, pt51-pt54, eastharlem) and Theorem 2.4 (t53)
# ---------------------------------------------------------------------------


def _idt5_bracket(order, l, j):
    return quotient(
        order,
        num=[BR([NQ(l + j), Q(2 * l)], 6 * l), E(6 * l), E(6 * l)],
        den=[BR([NQ(j), Q(l), NQ(2 * l + j)], 6 * l)],
    )


def _idt5_sums(order, l, j):
    s1 = geom(order, l, 1, 6 * l)
    s2 = geom(order, 5 * l, 1, 6 * l)
    s3 = geom(order, l + j, -1, 6 * l)
    s4 = geom(order, 5 * l - j, -1, 6 * l)
    s5 = geom(order, 3 * l - j, -1, 6 * l)
    s6 = geom(order, 3 * l + j, -1, 6 * l)
    return s1, s2, s3, s4, s5, s6


def _al2(order, l, j, alpha=1, beta=0, weight6=False):
    a, b = (alpha, beta) if not weight6 else (alpha, 6)
    return LS(order, alpha=a, beta=b, sign=-1, a2=3 * l, a1=4 * l, scale=Q(l), den=(NQ(j + 2 * l), 6 * l))


def _al0(order, l, j, alpha=1, beta=0):
    return LS(order, alpha=alpha, beta=beta, sign=-1, a2=3 * l, a1=2 * l, den=(NQ(j), 6 * l))


def _al3(order, l, j):
    return LS(order, sign=-1, a2=3 * l, a1=5 * l, scale=Q(2 * l), den=(NQ(j + 3 * l), 6 * l))


def _r3_prefactor(order, l):
    return quotient(
        order, num=[E(2 * l), E(2 * l)], den=[P(Q(l), 2 * l), P(Q(l), 2 * l)], const=4
    )


def _idt5_lhs(order, l, j):
    s1, s2, s3, s4, s5, s6 = _idt5_sums(order, l, j)
    braces = const_ps(j, order) + (s1 - s2 + s3 - s4 - s5.scaled(2) + s6.scaled(2)).scaled(2)
    return _idt5_bracket(order, l, j) * braces


def _idt5_rhs(order, l, j):
    r1 = _al2(order, l, j, alpha=2 + j, beta=6)
    r2 = _al0(order, l, j, alpha=j, beta=6)
    r3 = _r3_prefactor(order, l) * _al3(order, l, j)
    return r1 + r2 + r3


_register(IdentityEntry("idt5", _idt5_lhs, _idt5_rhs, param_grid=LJ_GRID, margin=16))


def _pt51_lhs(order, l, j):
    s1, s2, s3, s4, _, _ = _idt5_sums(order, l, j)
    return _idt5_bracket(order, l, j) * (s1 - s2 + s3 - s4)


def _pt51_rhs(order, l, j):
    s1, s2, _, _, _, _ = _idt5_sums(order, l, j)
    prod = (s1 - s2).scaled(2) * _al2(order, l, j)
    r2 = _al2(order, l, j, alpha=1, beta=1)
    r3 = _al0(order, l, j, alpha=0, beta=1)
    return prod + r2 + r3


_register(IdentityEntry("pt51", _pt51_lhs, _pt51_rhs, param_grid=LJ_GRID, margin=16))


def _pt52_lhs(order, l, j):
    _, _, _, _, s5, s6 = _idt5_sums(order, l, j)
    return _idt5_bracket(order, l, j) * (s5 - s6)


def _pt52_rhs(order, l, j):
    s1, s2, _, _, _, _ = _idt5_sums(order, l, j)
    prod = (s1 - s2) * _al2(order, l, j)
    r2 = _al2(order, l, j, alpha=0, beta=1)
    r3 = _al0(order, l, j, alpha=0, beta=1)
    br2 = quotient(
        order,
        num=[BR([Q(-2 * l), Q(2 * l)], 6 * l), E(6 * l), E(6 * l)],
        den=[BR([Q(3 * l), Q(l), Q(-l)], 6 * l)],
    )
    r4 = br2 * LS(
        order, sign=-1, a2=3 * l, a1=5 * l, scale=Q(3 * l), den=(NQ(j + 3 * l), 6 * l)
    )
    return prod - r2 - r3 - r4


_register(IdentityEntry("pt52", _pt52_lhs, _pt52_rhs, param_grid=LJ_GRID, margin=16))


def _pt53_lhs(order, l, j):
    s1, s2, s3, s4, s5, s6 = _idt5_sums(order, l, j)
    braces = (s1 - s2 + s3 - s4).scaled(2) - (s5 - s6).scaled(4)
    return _idt5_bracket(order, l, j) * braces


def _pt53_rhs(order, l, j):
    r1 = _al2(order, l, j, alpha=2, beta=6)
    r2 = _al0(order, l, j, alpha=0, beta=6)
    r3 = _r3_prefactor(order, l) * _al3(order, l, j)
    return r1 + r2 + r3


_register(IdentityEntry("pt53", _pt53_lhs, _pt53_rhs, param_grid=LJ_GRID, margin=16))


def _pt54_lhs(order, l, j):
    return _idt5_bracket(order, l, j)


def _pt54_rhs(order, l, j):
    return _al2(order, l, j) + _al0(order, l, j)


_register(IdentityEntry("pt54", _pt54_lhs, _pt54_rhs, param_grid=LJ_GRID, margin=16))


def _eastharlem_lhs(order, l, j):
    return quotient(
        order,
        num=[
            BR([NQ(3 * l + j), NQ(j + l), Q(2 * l), mono(1, 1, 3 * l)], 6 * l),
            E(6 * l),
            E(6 * l),
        ],
        den=[BR([NQ(j + 2 * l), NQ(j), Q(3 * l), Q(l), mono(-1, 1, j + 3 * l)], 6 * l)],
    )


def _eastharlem_rhs(order, l, j):
    t1 = quotient(
        order,
        num=[BR([mono(1, -1, 0), mono(1, -1, -2 * l), Q(2 * l)], 6 * l)],
        den=[BR([Q(3 * l), Q(l), mono(1, -1, -l)], 6 * l)],
        scale=X,
    )
    t1 = t1 * LS(
        order,
        sign=-1,
        a2=3 * l,
        a1=5 * l,
        scale=mono(-1, 0, 3 * l),
        den=(mono(-1, 1, j + 3 * l), 6 * l),
    )
    t2 = quotient(
        order,
        num=[BR([Q(l), mono(1, 1, 3 * l)], 6 * l)],
        den=[BR([Q(3 * l), mono(1, 1, l)], 6 * l)],
    )
    t2 = t2 * LS(
        order, a2=3 * l, a1=4 * l, scale=Q(l), power=mono(-1, -1, 0), den=(NQ(j + 2 * l), 6 * l)
    )
    t3 = LS(order, a2=3 * l, a1=2 * l, power=mono(-1, -1, 0), den=(NQ(j), 6 * l))
    return t1 + t2 + t3


_register(
    IdentityEntry(
        "eastharlem", _eastharlem_lhs, _eastharlem_rhs, param_grid=LJ_GRID,
        formal="b of the r=2, s=3 specialization", order_cap=120, margin=20,
    )
)


def _t53_lhs(order, l, j):
    pre = quotient(
        order,
        num=[BR([Q(2 * l + j), Q(4 * l)], 6 * l), E(6 * l), E(6 * l)],
        den=[BR([NQ(j), NQ(2 * l), NQ(4 * l + j)], 6 * l)],
    )
    u1 = geom(order, 2 * l, -1, 6 * l)
    u2 = geom(order, 4 * l, -1, 6 * l)
    u3 = geom(order, 2 * l + j, 1, 6 * l)
    u4 = geom(order, 4 * l - j, 1, 6 * l)
    u5 = geom(order, 4 * l + j, 1, 6 * l)
    u6 = geom(order, 2 * l - j, 1, 6 * l)
    braces = const_ps(j, order) + (u1 - u2 - u3 + u4).scaled(2) - (u5 - u6).scaled(4)
    return pre * braces


def _t53_rhs(order, l, j):
    r1 = LS(
        order, alpha=4 + j, beta=6, a2=3 * l, a1=5 * l, scale=Q(2 * l), den=(NQ(j + 4 * l), 6 * l)
    ).scaled(-1)
    r2 = LS(order, alpha=j, beta=6, a2=3 * l, a1=l, den=(NQ(j), 6 * l))
    pre = quotient(
        order, num=[E(2 * l), E(2 * l)], den=[P(NQ(2 * l), 2 * l), P(NQ(2 * l), 2 * l)], const=2
    )
    r3 = pre * LS(order, sign=-1, a2=3 * l, a1=5 * l, scale=Q(2 * l), den=(Q(j + 4 * l), 6 * l))
    return r1 + r2 + r3


_register(
    IdentityEntry(
        "t53-display", _t53_lhs, _t53_rhs, param_grid=({"l": 1, "j": -1},), margin=16
    )
)


# ---------------------------------------------------------------------------
# the idt9 route (idt9, pt95, cor32, pt96, pt9f, t9f) and t919a route
# ---------------------------------------------------------------------------


def _idt9_lhs(order):
    pre = quotient(order, num=[E(2), E(2)], den=[P(NQ(1), 2), P(NQ(1), 2)], const=2)
    return pre * LS(order, sign=-1, a2=3, a1=1, den=(NQ(0), 2))


def _idt9_rhs(order):
    r1 = LS(order, alpha=1, beta=6, a2=3, a1=2, den=(Q(1), 6))
    r2 = LS(order, alpha=-1, beta=2, a2=3, a1=2, scale=Q(-2), den=(Q(-3), 6)).scaled(-3)
    return r1 + r2


_register(IdentityEntry("idt9", _idt9_lhs, _idt9_rhs))


def _pt95_vsums(order):
    v1 = geom(order, 1, 1, 6)
    v2 = geom(order, 5, 1, 6)
    v3 = geom(order, -2, -1, 6)
    v4 = geom(order, 8, -1, 6)
    return v1, v2, v3, v4


def _pt95_lhs(order):
    pre = quotient(
        order,
        num=[BR([NQ(-2), Q(2)], 6), E(6), E(6)],
        den=[BR([NQ(-3), Q(1), NQ(-1)], 6)],
    )
    v1, v2, v3, v4 = _pt95_vsums(order)
    return pre * (const_ps(-1, order) + (v1 - v2 + v3 - v4).scaled(2))


def _pt95_rhs(order):
    r1 = LS(order, alpha=-1, beta=6, sign=-1, a2=3, a1=4, scale=Q(1), den=(NQ(-1), 6))
    r2 = LS(order, alpha=-3, beta=6, sign=-1, a2=3, a1=2, den=(NQ(-3), 6))
    pre = quotient(
        order,
        num=[BR([Q(-2), Q(2)], 6), E(6), E(6)],
        den=[BR([Q(3), Q(1), Q(-1)], 6)],
        const=4,
    )
    r3 = pre * LS(order, sign=-1, a2=3, a1=5, scale=Q(3), den=(NQ(0), 6))
    return r1 + r2 + r3


_register(IdentityEntry("pt95", _pt95_lhs, _pt95_rhs, margin=16))


def _cor32a_lhs(order):
    v1, v2, v3, v4 = _pt95_vsums(order)
    return const_ps(-1, order) + (v1 - v2 + v3 - v4).scaled(2)


def _cor32a_rhs(order):
    return quotient(
        order,
        num=[BR([Q(10), NQ(3), NQ(3)], 6), E(6), E(6)],
        den=[BR([Q(1), Q(1), NQ(-2), NQ(8)], 6)],
        const=-1,
    )


_register(IdentityEntry("cor32-a", _cor32a_lhs, _cor32a_rhs, margin=16))


def _cor32b_wsums(order):
    w1 = geom(order, 2, -1, 6)
    w2 = geom(order, 4, -1, 6)
    w3 = geom(order, 1, 1, 6)
    w4 = geom(order, 5, 1, 6)
    return w1, w2, w3, w4


def _cor32b_lhs(order):
    w1, w2, w3, w4 = _cor32b_wsums(order)
    return const_ps(-1, order) + (w1 - w2 - w3 + w4).scaled(2)


def _cor32b_rhs(order):
    return quotient(
        order,
        num=[BR([Q(2), NQ(3), NQ(3)], 6), E(6), E(6)],
        den=[BR([Q(1), Q(1), NQ(2), NQ(4)], 6)],
        const=-1,
    )


_register(IdentityEntry("cor32-b", _cor32b_lhs, _cor32b_rhs))


def _pt96_lhs(order):
    r1 = LS(order, alpha=-1, beta=6, sign=-1, a2=3, a1=4, scale=Q(1), den=(NQ(-1), 6))
    r2 = LS(order, alpha=-3, beta=6, sign=-1, a2=3, a1=2, den=(NQ(-3), 6))
    return (r1 + r2).scaled(-1)


def _pt96_rhs(order):
    t1 = quotient(
        order,
        num=[BR([Q(1), Q(2), Q(2), NQ(2), Q(3)], 6), E(6), E(6), E(6), E(6)],
        den=[BR([NQ(1)], 6)],
        const=-1,
    )
    pre = quotient(order, num=[E(2), E(2)], den=[P(Q(1), 2), P(Q(1), 2)], const=4)
    t2 = pre * LS(order, sign=-1, a2=3, a1=5, scale=Q(2), den=(NQ(0), 6))
    return t1 + t2


_register(IdentityEntry("pt96", _pt96_lhs, _pt96_rhs))


def _pt9f_lhs(order):
    return quotient(
        order,
        num=[BR([Q(1), Q(2), Q(2), NQ(2), Q(3)], 6), E(6), E(6), E(6), E(6)],
        den=[BR([NQ(1)], 6)],
        scale=mono(-1, 0, 2),
    )


def _pt9f_rhs(order):
    pre = quotient(order, num=[E(2), E(2)], den=[P(Q(1), 2), P(Q(1), 2)], const=-2)
    return pre * LS(order, sign=-1, a2=3, a1=3, scale=Q(2), den=(NQ(0), 6))


_register(IdentityEntry("pt9f", _pt9f_lhs, _pt9f_rhs))


def _t9f_rhs(order):
    pre = quotient(order, num=[E(2), E(2)], den=[P(Q(1), 2), P(Q(1), 2)], const=2)
    return pre * LS(order, sign=-1, a2=3, a1=1, scale=Q(2), den=(NQ(0), 2))


_register(IdentityEntry("t9f", _pt96_lhs, _t9f_rhs))


def _t919a_lhs(order):
    pre = quotient(order, num=[E(2), E(2)], den=[P(NQ(2), 2), P(NQ(2), 2)])
    return pre * LS(order, sign=-1, a2=3, a1=3, den=(Q(1), 2))


def _t919a_rhs(order):
    r1 = LS(order, alpha=-1, beta=2, a2=3, a1=1, scale=Q(-2), den=(NQ(-3), 6)).scaled(-3)
    r2 = LS(order, alpha=-1, beta=6, a2=3, a1=1, scale=Q(-1), den=(NQ(-1), 6)).scaled(-1)
    return r1 + r2


_register(IdentityEntry("t919a", _t919a_lhs, _t919a_rhs))


def _leid54_lhs(order):
    pre = quotient(
        order,
        num=[BR([Q(1), Q(4)], 6), E(6), E(6)],
        den=[BR([NQ(-1), NQ(2), NQ(3)], 6)],
    )
    w1, w2, w3, w4 = _cor32b_wsums(order)
    return pre * (const_ps(-1, order) + (w1 - w2 - w3 + w4).scaled(2))


def _leid54_rhs(order):
    r1 = LS(order, alpha=3, beta=6, a2=3, a1=5, scale=Q(2), den=(NQ(3), 6)).scaled(-1)
    r2 = LS(order, alpha=-1, beta=6, a2=3, a1=1, den=(NQ(-1), 6))
    pre = quotient(order, num=[E(2), E(2)], den=[P(NQ(2), 2), P(NQ(2), 2)], const=2)
    r3 = pre * LS(order, sign=-1, a2=3, a1=5, scale=Q(2), den=(Q(3), 6))
    return r1 + r2 + r3


_register(IdentityEntry("leid54", _leid54_lhs, _leid54_rhs, margin=16))


def _leid55_lhs(order):
    r1 = LS(order, alpha=3, beta=6, a2=3, a1=5, scale=Q(2), den=(NQ(3), 6))
    r2 = LS(order, alpha=-1, beta=6, a2=3, a1=1, den=(NQ(-1), 6))
    return r1 - r2


def _leid56_lhs(order):
    return quotient(
        order,
        num=[BR([Q(2), NQ(3), Q(4)], 6), E(6), E(6), E(6), E(6)],
        den=[BR([Q(1), NQ(1), NQ(2), NQ(2), NQ(4)], 6)],
        scale=Q(1),
    )


def _leid55_rhs(order):
    pre = quotient(order, num=[E(2), E(2)], den=[P(NQ(2), 2), P(NQ(2), 2)], const=2)
    t1 = pre * LS(order, sign=-1, a2=3, a1=5, scale=Q(2), den=(Q(3), 6))
    return t1 + _leid56_lhs(order)


_register(IdentityEntry("leid55", _leid55_lhs, _leid55_rhs))


def _leid56_rhs(order):
    pre = quotient(order, num=[E(2), E(2)], den=[P(NQ(2), 2), P(NQ(2), 2)])
    return pre * LS(order, sign=-1, a2=3, a1=3, scale=Q(1), den=(Q(3), 6))


_register(IdentityEntry("leid56", _leid56_lhs, _leid56_rhs))


def _leid57_rhs(order):
    pre = quotient(order, num=[E(2), E(2)], den=[P(NQ(2), 2), P(NQ(2), 2)])
    return pre * LS(order, sign=-1, a2=3, a1=3, scale=Q(1), den=(Q(1), 2))


_register(IdentityEntry("leid57", _leid55_lhs, _leid57_rhs))


# ---------------------------------------------------------------------------
# the t920 route (pom4, cor31, pt920a, equiv, hi-mo consequence)
# ---------------------------------------------------------------------------


def _pom4_msum(order):
    g1 = geom(order, 1, -1, 6)
    g2 = geom(order, 5, -1, 6)
    g3 = geom(order, 1, 1, 6)
    g4 = geom(order, 5, 1, 6)
    return g2 - g1 + g4 - g3


def _pom4_lhs(order):
    pre = quotient(
        order,
        num=[BR([Q(1), Q(2)], 6), E(6), E(6)],
        den=[BR([NQ(0), NQ(1), NQ(2)], 6)],
        const=2,
    )
    return pre * _pom4_msum(order)


def _pom4_rhs(order):
    r1 = LS(order, alpha=2, beta=6, a2=3, a1=4, scale=Q(1), den=(NQ(2), 6)).scaled(-1)
    r2 = LS(order, alpha=0, beta=6, a2=3, a1=2, den=(NQ(0), 6))
    pre = quotient(order, num=[E(2), E(2)], den=[P(NQ(1), 2), P(NQ(1), 2)], const=4)
    r3 = pre * LS(order, sign=-1, a2=3, a1=5, scale=Q(2), den=(Q(3), 6))
    return r1 + r2 + r3


_register(IdentityEntry("pom4", _pom4_lhs, _pom4_rhs))


def _cor31_rhs(order):
    return quotient(
        order,
        num=[BR([Q(8)], 12), E(12), E(12)],
        den=[BR([Q(2), Q(6)], 12)],
        scale=mono(-4, 0, 1),
    )


_register(IdentityEntry("cor31-instance", _pom4_msum, _cor31_rhs))


def _pt920a_lhs(order):
    pre = quotient(
        order, num=[E(2), E(2), E(2)], den=[P(NQ(1), 2), P(NQ(1), 2)], scale=Q(1)
    )
    return pre * mock_ps("omega", order)


def _pt920a_rhs(order):
    r1 = LS(order, alpha=2, beta=3, a2=3, a1=14, scale=Q(8), den=(Q(8), 12))
    r2 = LS(order, alpha=0, beta=1, a2=3, a1=2, den=(Q(0), 12), rng=NONZERO_Z).scaled(-3)
    r3 = LS(order, alpha=2, beta=3, a2=3, a1=8, scale=Q(4), den=(Q(8), 12)).scaled(-1)
    r4 = LS(order, alpha=0, beta=1, a2=3, a1=8, den=(Q(0), 12), rng=NONZERO_Z).scaled(3)
    return r1 + r2 + r3 + r4


_register(IdentityEntry("pt920a", _pt920a_lhs, _pt920a_rhs))


def _equiv_rhs(order):
    r1 = LS(order, alpha=0, beta=1, a2=3, a1=2, den=(NQ(0), 6)).scaled(-3)
    r2 = LS(order, alpha=1, beta=3, a2=3, a1=4, scale=Q(1), den=(NQ(2), 6))
    return r1 + r2


_register(IdentityEntry("equiv", _pt920a_lhs, _equiv_rhs))


def _himo_lhs(order):
    pre = quotient(
        order, num=[E(2), E(2), E(2)], den=[P(NQ(1), 2), P(NQ(1), 2)], const=2
    )
    return pre * mock_ps("omega", order)


def _himo_rhs(order):
    r1 = LS(order, alpha=2, beta=6, a2=3, a1=4, den=(NQ(2), 6))
    r2 = LS(order, alpha=0, beta=6, a2=3, a1=2, scale=Q(-1), den=(NQ(0), 6)).scaled(-1)
    return r1 + r2


_register(IdentityEntry("hi-mo-consequence", _himo_lhs, _himo_rhs))


# ---------------------------------------------------------------------------
# section 4: l31, last11, thirty, waston, ftonu, r-identity
# ---------------------------------------------------------------------------


def _l31_lhs(order):
    pre = quotient(order, num=[E(1), E(1)], den=[BR([mono(1, -1, 0)], 1)])
    return pre * LS(order, sign=-1, a2=R12, a1=R12, power=X, den=(X, 1))


def _l31_rhs(order):
    t1 = LS(order, scale=X, power=Q(1), den=(X, 1, 2), rng=from_k(0)).scaled(-1)
    t2 = LS(order, scale=mono(1, -1, 1), power=Q(1), den=(mono(1, -1, 1), 1, 2), rng=from_k(0)).scaled(-1)
    t3 = LS(order, alpha=0, beta=1, sign=-1, a2=R12, a1=R12, den=(Q(0), 1), rng=NONZERO_Z)
    return t1 + t2 + t3


_register(
    IdentityEntry(
        "l31",
        _l31_lhs,
        _l31_rhs,
        clearing=sorted_atoms(
            [PoleFactor(rat(1), 1), PoleFactor(rat(1), 1), PoleFactor(rat(1), -1)]
        ),
        formal="b",
        order_cap=120,
    )
)


def _last11_lhs(order):
    # b1 instantiated as -q, b retained as the formal symbol
    return quotient(
        order,
        num=[BR([mono(-1, 1, 1), mono(-1, -1, 1)], 1), E(1), E(1)],
        den=[BR([X, NQ(1), NQ(1)], 1)],
    )


def _last11_rhs(order):
    t1 = LS(order, sign=-1, a2=R12, a1=R12, power=X, den=(X, 1))
    pre = quotient(order, num=[BR([X], 1)], den=[BR([NQ(1)], 1)], scale=mono(1, -1, 1))
    t2 = pre * LS(order, a2=R12, a1=R12, power=Q(1), den=(NQ(1), 1))
    # the second term enters with a plus: the printed minus together with
    # (-b1)^(k+1) double-counts the sign (cross-checked against the raw
    # generalized identity and the differentiated display that follows)
    return t1 + t2


_register(
    IdentityEntry(
        "last11", _last11_lhs, _last11_rhs, formal="b; b1 := -q", order_cap=120
    )
)


def _thirty_lhs(order):
    t1 = quotient(order, num=[P(mono(1, 1, 1), 1), P(mono(1, -1, 1), 1)], den=[E(1), E(1)])
    t1 = PoleSeries(t1.qs, t1.poles + (PoleFactor(rat(1), 1),))
    pre = quotient(order, num=[BR([mono(1, -1, 0)], 1)], den=[E(1), E(1)])
    eis = LS(order, power=Q(1), den=(Q(0), 1, 2), rng=from_k(1)).scaled(2)
    sb = LS(order, scale=X, power=Q(1), den=(X, 1, 2), rng=from_k(1))
    sbinv = LS(order, scale=mono(1, -1, 0), power=Q(1), den=(mono(1, -1, 0), 1, 2), rng=from_k(1))
    return t1 + pre * (eis - sb - sbinv)


def _thirty_rhs(order):
    t1 = LS(order, sign=-1, a2=R12, a1=R12, power=X, den=(X, 1))
    pre = quotient(order, num=[BR([X], 1)], den=[E(1), E(1)], scale=mono(1, -1, 0))
    p2a = LS(order, sign=-1, a2=R12, a1=R12, den=(Q(0), 1, 2), rng=NONZERO_Z)
    p2b = LS(order, sign=-1, a2=R12, a1=R32, den=(Q(0), 1, 2), rng=NONZERO_Z)
    w = LS(order, alpha=0, beta=1, sign=-1, a2=R12, a1=R12, den=(Q(0), 1), rng=NONZERO_Z)
    return t1 + pre * (p2a + p2b + w)


_register(
    IdentityEntry("thirty", _thirty_lhs, _thirty_rhs, formal="b", order_cap=120)
)


def _waston_lhs(order):
    return LS(order, power=Q(1), den=(Q(0), 1, 2), rng=from_k(1))


def _waston_rhs(order):
    p1 = LS(order, sign=-1, a2=R12, a1=R12, den=(Q(0), 1, 2), rng=from_k(1))
    p2 = LS(order, sign=-1, a2=R12, a1=R32, den=(Q(0), 1, 2), rng=from_k(1))
    return (p1 + p2).scaled(-1)


_register(IdentityEntry("waston", _waston_lhs, _waston_rhs))


def _ftonu_lhs(order):
    return mock_ps("Ftilde", order)


def _ftonu_rhs(order):
    return mock_ps("nu2", order).scaled(-2)


_register(IdentityEntry("ftonu", _ftonu_lhs, _ftonu_rhs))


def _r_identity_lhs(order):
    pre = quotient(order, num=[E(4), E(4), E(4)], scale=Q(1))
    return pre * mock_ps("B", order)


def _r_identity_rhs(order):
    t1 = LS(order, scale=Q(1), power=Q(4), den=(Q(1), 4, 2), rng=from_k(0))
    t2 = LS(order, scale=Q(3), power=Q(4), den=(Q(3), 4, 2), rng=from_k(0))
    t3 = LS(order, alpha=0, beta=1, sign=-1, a2=2, a1=2, den=(Q(0), 4), rng=NONZERO_Z)
    return t1 + t2 - t3


_register(IdentityEntry("r-identity", _r_identity_lhs, _r_identity_rhs))


# ---------------------------------------------------------------------------
# generic instances of the generalized Lambert series identity
# ---------------------------------------------------------------------------


def _gls_entry(name, inst: GlsInstance, formal=None, order_cap=None, margin=12):
    _register(
        IdentityEntry(
            name,
            lambda order: build_gls_lhs(inst, order),
            lambda order: build_gls_rhs(inst, order),
            formal=formal,
            order_cap=order_cap,
            margin=margin,
        )
    )


_gls_entry("gls-r0s2", GlsInstance(0, 2, (), (NQ(1), NQ(3)), base=4))
_gls_entry(
    "gls-r0s3",
    GlsInstance(0, 3, (), (X, NQ(1), NQ(2)), base=2),
    formal="b1",
    order_cap=120,
)
_gls_entry("gls-r1s2", GlsInstance(1, 2, (NQ(-2),), (NQ(-3), NQ(-1)), base=6), margin=16)
_gls_entry("gls-r1s3", GlsInstance(1, 3, (NQ(2),), (NQ(1), NQ(3), NQ(4)), base=5))
_gls_entry(
    "gls-r2s3",
    GlsInstance(2, 3, (NQ(0), NQ(-2)), (mono(-1, 1, 0), NQ(-1), NQ(-3)), base=6),
    formal="b1 carries the formal symbol",
    order_cap=120,
    margin=16,
)
