"""Exact arithmetic for Laurent polynomials in one symbol x and truncated
Laurent series in q over them.

A :class:`QSeries` represents an element of (Laurent polynomials in x)[[q]]*q^v
on an explicit truncation window [val, order): coefficients for q^val ...
q^(order-1) are known exactly, everything at q^order and above is unknown.
Addition intersects windows, multiplication uses the Cauchy rule
order = min(N1+v2, N2+v1).  All values are immutable after construction and
every operation is a pure function.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .rational import ONE, ZERO, Rational, as_int, is_integral, rat, rat_str


class QSeriesError(ValueError):
    """Base class for exact-arithmetic contract violations."""


class WindowError(QSeriesError):
    pass


class NonUnitError(QSeriesError):
    pass


class PoleError(QSeriesError):
    pass


class InexactDivisionError(QSeriesError):
    pass


class SubstitutionError(QSeriesError):
    pass


# ---------------------------------------------------------------------------
# Laurent polynomials in x
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Finite map from integer x-exponent to nonzero rational coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms:
            self.terms = {d: c for d, c in terms.items() if c}
        else:
            self.terms = {}

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def const(c) -> "LaurentPoly":
        p = LaurentPoly.__new__(LaurentPoly)
        c = rat(c)
        p.terms = {0: c} if c else {}
        return p

    @staticmethod
    def term(c, d: int) -> "LaurentPoly":
        p = LaurentPoly.__new__(LaurentPoly)
        c = rat(c)
        p.terms = {d: c} if c else {}
        return p

    @staticmethod
    def _raw(terms: dict) -> "LaurentPoly":
        # caller guarantees no zero values
        p = LaurentPoly.__new__(LaurentPoly)
        p.terms = terms
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_const(self) -> bool:
        return not self.terms or self.terms.keys() == {0}

    def const_value(self):
        if not self.terms:
            return ZERO
        if self.terms.keys() != {0}:
            raise QSeriesError("not a constant Laurent polynomial")
        return self.terms[0]

    def as_monomial(self):
        """Return (c, d) when the polynomial is a single term, else None."""
        if len(self.terms) != 1:
            return None
        d, c = next(iter(self.terms.items()))
        return c, d

    def min_deg(self) -> int:
        return min(self.terms)

    def max_deg(self) -> int:
        return max(self.terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, int) or type(other) is type(ONE):
            return self.terms == ({0: rat(other)} if other else {})
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for d, c in other.terms.items():
            v = out.get(d)
            s = c if v is None else v + c
            if s:
                out[d] = s
            elif v is not None:
                del out[d]
        return LaurentPoly._raw(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({d: -c for d, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                k = d1 + d2
                v = out.get(k)
                s = c1 * c2 if v is None else v + c1 * c2
                if s:
                    out[k] = s
                elif v is not None:
                    del out[k]
        return LaurentPoly._raw(out)

    def scaled(self, c) -> "LaurentPoly":
        if not c:
            return LaurentPoly()
        return LaurentPoly._raw({d: v * c for d, v in self.terms.items()})

    def shifted(self, d: int) -> "LaurentPoly":
        """Multiply by x^d."""
        if d == 0:
            return self
        return LaurentPoly._raw({k + d: v for k, v in self.terms.items()})

    def deriv(self) -> "LaurentPoly":
        """Formal derivative: x^d -> d*x^(d-1)."""
        out = {}
        for d, c in self.terms.items():
            if d != 0:
                out[d - 1] = c * d
        return LaurentPoly._raw(out)

    def subst_sign(self, sign: int):
        """Evaluate at x = +1 or x = -1, returning a Rational."""
        total = ZERO
        for d, c in self.terms.items():
            total = total + c if (sign == 1 or d % 2 == 0) else total - c
        return total

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for d in sorted(self.terms):
            c = self.terms[d]
            cs = rat_str(c)
            if d == 0:
                parts.append(cs)
            else:
                xs = "x" if d == 1 else f"x^{d}"
                if c == 1:
                    parts.append(xs)
                elif c == -1:
                    parts.append(f"-{xs}")
                else:
                    parts.append(f"{cs}*{xs}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


LP_ONE = LaurentPoly.const(1)


def lp_exact_div(p: LaurentPoly, factor: LaurentPoly) -> LaurentPoly:
    """Exact quotient p / factor where factor has the shape 1 - c*x^d.

    Raises InexactDivisionError when factor does not divide p in the
    Laurent-polynomial ring.
    """
    c, d = _parse_one_minus(factor)
    return _div_one_minus(p, c, d)


def _parse_one_minus(factor: LaurentPoly):
    t = factor.terms
    if len(t) != 2 or t.get(0) != 1:
        raise InexactDivisionError(f"factor is not of the form 1 - c*x^d: {factor}")
    d = next(k for k in t if k != 0)
    return -t[d], d


def _div_one_minus(p: LaurentPoly, c, d: int) -> LaurentPoly:
    """Exact division by (1 - c*x^d) with d != 0, c != 0."""
    if d == 0 or not c:
        raise InexactDivisionError("divisor must involve x")
    if d < 0:
        # 1 - c*x^d = -c*x^d * (1 - (1/c)*x^-d); divide out the unit first
        q = _div_one_minus(p, 1 / rat(c), -d)
        return q.shifted(-d).scaled(-1 / rat(c))
    if p.is_zero():
        return p
    rem = dict(p.terms)
    top = max(rem)
    out = {}
    while rem:
        e = min(rem)
        if e > top - d:
            raise InexactDivisionError("inexact Laurent division")
        t = rem.pop(e)
        out[e] = t
        k = e + d
        v = rem.get(k)
        s = c * t if v is None else v + c * t
        if s:
            rem[k] = s
        elif v is not None:
            del rem[k]
    return LaurentPoly._raw(out)


# ---------------------------------------------------------------------------
# Monomials c * x^d * q^m
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    """c * x^d * q^m with c a nonzero rational."""

    coeff: object = ONE
    xdeg: int = 0
    qexp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", rat(self.coeff))
        if not self.coeff:
            raise QSeriesError("monomial coefficient must be nonzero")

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.coeff * other.coeff, self.xdeg + other.xdeg, self.qexp + other.qexp)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.coeff / other.coeff, self.xdeg - other.xdeg, self.qexp - other.qexp)

    def __neg__(self) -> "Monomial":
        return Monomial(-self.coeff, self.xdeg, self.qexp)

    def inv(self) -> "Monomial":
        return Monomial(1 / self.coeff, -self.xdeg, -self.qexp)

    def pow(self, k: int) -> "Monomial":
        if k == 0:
            return Monomial(ONE, 0, 0)
        c = self.coeff ** k if k > 0 else (1 / self.coeff) ** (-k)
        return Monomial(c, self.xdeg * k, self.qexp * k)

    def xpart(self) -> LaurentPoly:
        """The x-content c*x^d as a LaurentPoly (q-exponent dropped)."""
        return LaurentPoly.term(self.coeff, self.xdeg)

    def is_one(self) -> bool:
        return self.coeff == 1 and self.xdeg == 0 and self.qexp == 0

    def __str__(self):
        parts = []
        if self.coeff != 1 or (self.xdeg == 0 and self.qexp == 0):
            parts.append(rat_str(self.coeff))
        if self.xdeg:
            parts.append("x" if self.xdeg == 1 else f"x^{self.xdeg}")
        if self.qexp:
            parts.append("q" if self.qexp == 1 else f"q^{self.qexp}")
        return "*".join(parts) if parts else "1"


MONO_ONE = Monomial(ONE, 0, 0)


def mono(c=1, x=0, q=0) -> Monomial:
    return Monomial(rat(c), x, q)


# ---------------------------------------------------------------------------
# Truncated Laurent series in q
# ---------------------------------------------------------------------------


class QSeries:
    """Truncated Laurent series: known coefficients for q^val .. q^(order-1)."""

    __slots__ = ("val", "coeffs")

    def __init__(self, val: int, coeffs):
        if not coeffs:
            raise WindowError("empty truncation window")
        self.val = val
        self.coeffs = coeffs

    @property
    def order(self) -> int:
        return self.val + len(self.coeffs)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zeros(lo: int, hi: int) -> "QSeries":
        if hi <= lo:
            raise WindowError("empty truncation window")
        return QSeries(lo, [LaurentPoly() for _ in range(hi - lo)])

    @staticmethod
    def const(c, order: int) -> "QSeries":
        s = QSeries.zeros(0, order)
        c = rat(c)
        if c:
            s.coeffs[0] = LaurentPoly.const(c)
        return s

    @staticmethod
    def one(order: int) -> "QSeries":
        return QSeries.const(1, order)

    @staticmethod
    def from_monomial(m: Monomial, order: int, lo: int = 0) -> "QSeries":
        lo = min(lo, m.qexp)
        s = QSeries.zeros(lo, max(order, m.qexp + 1))
        s.coeffs[m.qexp - lo] = m.xpart()
        return s

    @staticmethod
    def from_dict(d: dict, lo: int, hi: int) -> "QSeries":
        """Build from {q-exponent: LaurentPoly or term-dict}; entries >= hi dropped."""
        s = QSeries.zeros(lo, hi)
        for e, p in d.items():
            if lo <= e < hi:
                if isinstance(p, dict):
                    p = LaurentPoly(p)
                s.coeffs[e - lo] = p
        return s

    # -- views --------------------------------------------------------------

    def get(self, n: int) -> LaurentPoly:
        """Coefficient at q^n, zero when below the window; None above it."""
        if n >= self.order:
            return None
        if n < self.val:
            return LaurentPoly()
        return self.coeffs[n - self.val]

    def is_xfree(self) -> bool:
        return all(not p.terms or p.terms.keys() <= {0} for p in self.coeffs)

    def is_zero_window(self) -> bool:
        return all(not p.terms for p in self.coeffs)

    def true_val(self):
        """Exponent of the first nonzero known coefficient, or None."""
        for i, p in enumerate(self.coeffs):
            if p.terms:
                return self.val + i
        return None

    def truncated(self, hi: int) -> "QSeries":
        if hi >= self.order:
            return self
        if hi <= self.val:
            raise WindowError("empty truncation window")
        return QSeries(self.val, self.coeffs[: hi - self.val])

    def padded_down(self, lo: int) -> "QSeries":
        """Extend the window floor with exact zeros (caller asserts them)."""
        if lo >= self.val:
            return self
        return QSeries(lo, [LaurentPoly() for _ in range(self.val - lo)] + self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "QSeries") -> "QSeries":
        return series_add(self, other)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return series_add(self, other.neg())

    def __mul__(self, other: "QSeries") -> "QSeries":
        return series_mul(self, other)

    def neg(self) -> "QSeries":
        return QSeries(self.val, [-p for p in self.coeffs])

    def __neg__(self) -> "QSeries":
        return self.neg()

    def scaled(self, c) -> "QSeries":
        c = rat(c)
        return QSeries(self.val, [p.scaled(c) for p in self.coeffs])

    def lp_mul(self, p: LaurentPoly) -> "QSeries":
        return QSeries(self.val, [cf * p for cf in self.coeffs])

    def mono_mul(self, m: Monomial) -> "QSeries":
        xp = m.xpart()
        return QSeries(self.val + m.qexp, [cf * xp for cf in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.val == other.val and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        return f"QSeries[{self.val},{self.order}): {self}"

    def __str__(self):
        parts = []
        for i, p in enumerate(self.coeffs):
            if not p.terms:
                continue
            e = self.val + i
            ps = str(p)
            if len(p.terms) > 1:
                ps = f"({ps})"
            if e == 0:
                parts.append(ps)
            else:
                qs = "q" if e == 1 else f"q^{e}"
                parts.append(qs if ps == "1" else f"{ps}*{qs}")
            if len(parts) >= 12:
                parts.append("...")
                break
        return " + ".join(parts) if parts else "0"


def series_add(a: QSeries, b: QSeries) -> QSeries:
    # val is a true valuation bound, so below-window coefficients are exact
    # zeros; the sum is therefore known from min(val) up to min(order).
    lo = min(a.val, b.val)
    hi = min(a.order, b.order)
    if hi <= lo:
        raise WindowError("incompatible truncation windows")
    zero = LaurentPoly()
    out = []
    for n in range(lo, hi):
        pa = a.coeffs[n - a.val] if n >= a.val else zero
        pb = b.coeffs[n - b.val] if n >= b.val else zero
        out.append(pa + pb)
    return QSeries(lo, out)


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    la, lb = len(a.coeffs), len(b.coeffs)
    length = min(la, lb)
    out = [None] * length
    for k in range(length):
        out[k] = {}
    A, B = a.coeffs, b.coeffs
    for i in range(min(la, length)):
        ta = A[i].terms
        if not ta:
            continue
        jmax = min(lb, length - i)
        if len(ta) == 1:
            d1, c1 = next(iter(ta.items()))
            for j in range(jmax):
                tb = B[j].terms
                if not tb:
                    continue
                acc = out[i + j]
                for d2, c2 in tb.items():
                    k = d1 + d2
                    v = acc.get(k)
                    acc[k] = c1 * c2 if v is None else v + c1 * c2
        else:
            for j in range(jmax):
                tb = B[j].terms
                if not tb:
                    continue
                acc = out[i + j]
                for d1, c1 in ta.items():
                    for d2, c2 in tb.items():
                        k = d1 + d2
                        v = acc.get(k)
                        acc[k] = c1 * c2 if v is None else v + c1 * c2
    coeffs = [LaurentPoly._raw({d: c for d, c in acc.items() if c}) for acc in out]
    return QSeries(a.val + b.val, coeffs)


def mul_one_minus(a: QSeries, c, d: int, e: int) -> QSeries:
    """a * (1 - c*x^d*q^e), treating the two-term factor as exact.

    Result window: [val + min(0,e), order + min(0,e)).
    """
    c = rat(c)
    shift = min(0, e)
    la = len(a.coeffs)
    out = [dict() for _ in range(la)]
    # contribution of a itself at offset -shift, of -c*x^d*q^e at offset e-shift
    off1 = -shift
    off2 = e - shift
    for i, p in enumerate(a.coeffs):
        if not p.terms:
            continue
        if 0 <= i + off1 < la:
            acc = out[i + off1]
            for k, v in p.terms.items():
                w = acc.get(k)
                acc[k] = v if w is None else w + v
        if 0 <= i + off2 < la:
            acc = out[i + off2]
            for k, v in p.terms.items():
                kk = k + d
                w = acc.get(kk)
                acc[kk] = -c * v if w is None else w - c * v
    coeffs = [LaurentPoly._raw({k: v for k, v in acc.items() if v}) for acc in out]
    return QSeries(a.val + shift, coeffs)


def series_inv_unit(a: QSeries) -> QSeries:
    """Inverse of a series whose leading coefficient is a single monomial c*x^d."""
    i0 = 0
    cs = a.coeffs
    while i0 < len(cs) and not cs[i0].terms:
        i0 += 1
    if i0 == len(cs):
        raise NonUnitError("non-unit leading coefficient")
    lead = cs[i0].as_monomial()
    if lead is None:
        raise NonUnitError("non-unit leading coefficient")
    c, d = lead
    veff = a.val + i0
    n = len(cs) - i0
    cinv = 1 / c
    # a = c*x^d*q^veff * (1 + s); invert the unit part by back-substitution
    s = [None] * n
    for k in range(1, n):
        t = cs[i0 + k].terms
        s[k] = {deg - d: v * cinv for deg, v in t.items()} if t else None
    b = [None] * n
    b[0] = {0: ONE}
    for k in range(1, n):
        acc = {}
        for i in range(1, k + 1):
            si = s[i]
            if si is None:
                continue
            bk = b[k - i]
            if not bk:
                continue
            for d1, c1 in si.items():
                for d2, c2 in bk.items():
                    kk = d1 + d2
                    v = acc.get(kk)
                    acc[kk] = c1 * c2 if v is None else v + c1 * c2
        b[k] = {deg: -v for deg, v in acc.items() if v}
    out = [
        LaurentPoly._raw({deg - d: v * cinv for deg, v in bk.items()}) if bk else LaurentPoly()
        for bk in b
    ]
    return QSeries(-veff, out)


def series_div(a: QSeries, b: QSeries) -> QSeries:
    return series_mul(a, series_inv_unit(b))


def expand_reciprocal(u: Monomial, p: int, order: int) -> QSeries:
    """1/(1-u)^p as a QSeries, p in {1, 2}.

    Positive q-exponent expands geometrically; negative q-exponent is rewritten
    through 1/(1-u) = -u^(-1)/(1-u^(-1)); a pure constant u = c gives the exact
    rational (1-c)^(-p).
    """
    if p not in (1, 2):
        raise QSeriesError("reciprocal power must be 1 or 2")
    c, d, m = u.coeff, u.xdeg, u.qexp
    if m == 0:
        if d != 0:
            raise PoleError("q^0 pole in x")
        if c == 1:
            raise PoleError("exact pole")
        return QSeries.const((1 - c) ** -p, order)
    acc = {}
    if m > 0:
        j = 0
        cj = ONE
        while j * m < order:
            w = cj if p == 1 else cj * (j + 1)
            acc[j * m] = {j * d: w}
            j += 1
            cj = cj * c
    else:
        # 1/(1-u)^p = (-1)^p u^(-p) / (1-1/u)^p
        sign = ONE if p % 2 == 0 else -ONE
        j = 0
        cj = sign * (1 / c) ** p
        while (p + j) * (-m) < order:
            w = cj if p == 1 else cj * (j + 1)
            acc[(p + j) * (-m)] = {-(p + j) * d: w}
            j += 1
            cj = cj * (1 / c)
    return QSeries.from_dict(acc, 0, order)


def subst_x(a: QSeries, target) -> QSeries:
    """Substitute x := target (either +-1 or a monomial +-q^m); result is x-free."""
    if isinstance(target, int):
        if target not in (1, -1):
            raise SubstitutionError("substitution target must be +-1 or +-q^m")
        out = []
        for p in a.coeffs:
            v = p.subst_sign(target)
            out.append(LaurentPoly.const(v) if v else LaurentPoly())
        return QSeries(a.val, out)
    if not isinstance(target, Monomial) or target.xdeg != 0 or target.coeff not in (1, -1):
        raise SubstitutionError("substitution target must be +-1 or +-q^m")
    sgn = 1 if target.coeff == 1 else -1
    m = target.qexp
    lo, hi = a.val, a.order
    acc = {}
    for i, p in enumerate(a.coeffs):
        e = a.val + i
        for d, c in p.terms.items():
            n = e + d * m
            if n < lo:
                raise SubstitutionError("substitution underflow")
            if n >= hi:
                continue
            v = c if (sgn == 1 or d % 2 == 0) else -c
            w = acc.get(n)
            acc[n] = v if w is None else w + v
    return QSeries.from_dict({n: {0: v} for n, v in acc.items() if v}, lo, hi)


def ddx(a: QSeries) -> QSeries:
    """Formal derivative in the retained symbol x."""
    return QSeries(a.val, [p.deriv() for p in a.coeffs])


def q_rescale(a: QSeries, D: int) -> QSeries:
    """Substitute q -> q^D (D a positive integer)."""
    if D <= 0:
        raise QSeriesError("rescale factor must be a positive integer")
    if D == 1:
        return a
    lo = D * a.val
    hi = D * (a.order - 1) + 1
    out = QSeries.zeros(lo, hi)
    for i, p in enumerate(a.coeffs):
        if p.terms:
            out.coeffs[D * (a.val + i) - lo] = p
    return out


def coeff(a: QSeries, n: int) -> LaurentPoly:
    """The stored coefficient of q^n; errors outside the window."""
    if n < a.val or n >= a.order:
        raise WindowError("coefficient outside truncation window")
    return a.coeffs[n - a.val]


def coeff_rat(a: QSeries, n: int):
    """Rational coefficient of q^n for an x-free series; 0 below the window."""
    if n >= a.order:
        raise WindowError("coefficient outside truncation window")
    if n < a.val:
        return ZERO
    return a.coeffs[n - a.val].const_value()


def first_mismatch(a: QSeries, b: QSeries, lo: int = None, hi: int = None):
    """First q-order in the compared window where a and b differ, or None.

    Coefficients below a window floor count as exact zeros, so the comparison
    runs from min(val) up to min(order), optionally restricted to [lo, hi).
    """
    clo = min(a.val, b.val)
    chi = min(a.order, b.order)
    if lo is not None:
        clo = max(clo, lo)
    if hi is not None:
        chi = min(chi, hi)
    if chi <= clo:
        raise WindowError("incompatible truncation windows")
    zero = {}
    for n in range(clo, chi):
        ta = a.coeffs[n - a.val].terms if n >= a.val else zero
        tb = b.coeffs[n - b.val].terms if n >= b.val else zero
        if ta != tb:
            return n, LaurentPoly._raw(dict(ta)), LaurentPoly._raw(dict(tb))
    return None
