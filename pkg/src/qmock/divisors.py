"""Divisor sums, sign-weighted factorization sums, and the right-hand sides
of the coefficient recursions, plus finite-enumeration lemma checks.

Divisibility filters such as 12 | 3a-b-2 run over all of Z including negative
factors, via exact signed modular arithmetic.  sigma of a non-integer or
non-positive argument is 0 by convention; sgn+(0) is +1.
"""
from __future__ import annotations

from functools import lru_cache

from .lambert import bilateral_sum, from_k, lam
from .mockforms import cached_series, coeff_c
from .rational import ONE, ZERO, is_integral, rat
from .rings import QSeriesError, coeff_rat, mono


@lru_cache(maxsize=None)
def divisors(n: int):
    """Sorted positive divisors of a positive integer."""
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d * d != n:
                out.append(n // d)
        d += 1
    return tuple(sorted(out))


def sigma(x) -> int:
    """Sum of positive divisors; 0 for non-integral or non-positive arguments."""
    x = rat(x)
    if not is_integral(x) or x <= 0:
        return 0
    return sum(divisors(int(x.numerator)))


def sgn_plus(x) -> int:
    return -1 if x < 0 else 1


def d_weight(N, Ntil, t, ttil):
    """sgn+(N) sgn+(Ntil) (|N+t| - |Ntil+ttil|)."""
    N, Ntil, t, ttil = rat(N), rat(Ntil), rat(t), rat(ttil)
    return sgn_plus(N) * sgn_plus(Ntil) * (abs(N + t) - abs(Ntil + ttil))


def signed_divisor_pairs(m: int):
    """All ordered pairs (a, b) of integers with a*b = m, both sign classes."""
    if m == 0:
        raise QSeriesError("unbounded factorization set")
    out = []
    for d in divisors(abs(m)):
        a, b = d, m // d if m > 0 else -(abs(m) // d)
        out.append((a, b))
        out.append((-a, -b))
    return out


def positive_divisor_pairs(m: int):
    if m <= 0:
        return []
    return [(d, m // d) for d in divisors(m)]


def r_n(n: int):
    """R_n of the omega recursions."""
    if n % 2 == 0:
        return rat(2, 3) * (sigma(rat(n, 4)) - sigma(rat(n, 2)))
    return rat(1, 3) * sigma(n)


def rtilde_n(n: int):
    """The companion constant appearing in the (c5) rearrangement."""
    if n % 2 == 0:
        return rat(1, 3) * (sigma(rat(n, 4)) - 2 * sigma(rat(n, 2)))
    return rat(1, 6) * sigma(n)


def _dsum(m: int, filt, N_of, Ntil_of, t, ttil):
    total = ZERO
    for a, b in signed_divisor_pairs(m):
        if filt(a, b):
            total += d_weight(N_of(a, b), Ntil_of(a, b), t, ttil)
    return total


THEOREMS = ("t1id", "t9", "t919", "t9201", "t9202", "t920c", "t920d", "corB")


def rhs_theorem(name: str, n: int):
    """Right-hand side of the named recursion at n >= 1."""
    if n < 1:
        raise QSeriesError("recursion index must be >= 1")
    if name == "t1id":
        s = _dsum(
            2 * n,
            lambda a, b: (3 * a + b - 1) % 6 == 0,
            lambda a, b: rat(-3 * a + b - 1, 6),
            lambda a, b: rat(3 * a + b - 1, 6),
            rat(1, 6),
            rat(1, 6),
        )
        return rat(4, 3) * sigma(n) - rat(16, 3) * sigma(rat(n, 2)) - 2 * s
    if name == "t9":
        s = _dsum(
            4 * n + 1,
            lambda a, b: (3 * a - b - 2) % 12 == 0,
            lambda a, b: rat(3 * a - b - 2, 12),
            lambda a, b: rat(3 * a + b - 4, 12),
            rat(1, 6),
            rat(1, 3),
        )
        return -2 * s
    if name == "t919":
        s = _dsum(
            4 * n + 3,
            lambda a, b: (3 * a - b - 4) % 12 == 0,
            lambda a, b: rat(3 * a - b - 4, 12),
            lambda a, b: rat(3 * a + b - 2, 12),
            rat(1, 3),
            rat(1, 6),
        )
        return s if n % 2 == 1 else -s

    def omega_d(filt):
        return _dsum(
            n,
            filt,
            lambda a, b: rat(a - 3 * b - 2, 6),
            lambda a, b: rat(a + 3 * b - 2, 6),
            rat(1, 3),
            rat(1, 3),
        )

    if name == "t9201":
        return r_n(n) - omega_d(lambda a, b: (a - 3 * b - 8) % 12 == 0)
    if name == "t9202":
        return -r_n(n) + omega_d(lambda a, b: (a - 3 * b - 2) % 12 == 0)
    if name == "t920c":
        return omega_d(lambda a, b: (a - 3 * b - 2) % 12 == 0) - omega_d(
            lambda a, b: (a - 3 * b - 8) % 12 == 0
        )
    if name == "t920d":
        return 2 * r_n(n) - omega_d(
            lambda a, b: (a - 3 * b - 8) % 12 == 0 or (a - 3 * b - 2) % 12 == 0
        )
    if name == "corB":
        # reading fixed by the coefficient extraction of the B(q) product
        # identity: condition 2m^2+2m+1 <= n over m >= 0 on the left, and the
        # alternating factorization sum carries weight 2
        first = sum(d for d in divisors(n) if (n // d) % 2 == 1)
        second = ZERO
        if n % 2 == 0:
            for a, b in positive_divisor_pairs(n // 2):
                if a < b and (a + b) % 2 == 1:
                    second += (-1) ** a * a * 2
        return first - second
    raise QSeriesError(f"unknown recursion: {name!r}")


# -- finite-enumeration lemma checks ------------------------------------------


def _S1(n: int):
    total = 0
    for a, b in positive_divisor_pairs(4 * n + 1):
        if 1 <= b <= 3 * a - 2 and ((3 * a - b - 2) % 12 == 0 or (3 * a - b + 2) % 12 == 0):
            total += b
    return total


def _S2(n: int):
    total = 0
    for a, b in positive_divisor_pairs(4 * n + 1):
        if b >= 3 * a + 2 and ((3 * a - b - 2) % 12 == 0 or (3 * a - b + 2) % 12 == 0):
            total += a
    return total


@lru_cache(maxsize=None)
def _series_cache(key: str, order: int):
    if key == "s1gen":
        s, _ = bilateral_sum(lam(alpha=1, beta=6, a2=3, a1=2, den=(mono(1, 0, 1), 6)), order)
        return s
    if key == "s2gen":
        s, _ = bilateral_sum(
            lam(alpha=-1, beta=2, a2=3, a1=2, scale=mono(1, 0, -2), den=(mono(1, 0, -3), 6)),
            order,
        )
        return s
    if key == "rdiff":
        a, _ = bilateral_sum(
            lam(alpha=0, beta=2, power=mono(1, 0, 4), den=(mono(1, 0, 0), 4), rng=from_k(1)),
            order,
        )
        b, _ = bilateral_sum(
            lam(alpha=-1, beta=2, scale=mono(1, 0, -1), power=mono(1, 0, 2),
                den=(mono(1, 0, -2), 4), rng=from_k(1)),
            order,
        )
        return a + b
    if key == "c5lhs":
        from .products import poch_inf
        from .mockforms import negated_q
        from .rings import series_inv_unit, series_mul

        e2 = poch_inf(mono(1, 0, 2), 2, order)
        pre = series_mul(series_mul(e2, e2), e2)
        den = poch_inf(mono(-1, 0, 1), 2, order)
        pre = series_mul(pre, series_inv_unit(series_mul(den, den)))
        om = negated_q(cached_series("omega", order))
        return series_mul(pre, om).mono_mul(mono(1, 0, 1))
    raise KeyError(key)


def _series_coeff(key: str, n: int):
    order = 128
    while order <= n:
        order *= 2
    return coeff_rat(_series_cache(key, order), n)


LEMMAS = (
    "split1",
    "t1irr",
    "key1-sum",
    "split2",
    "s1gen",
    "s2gen",
    "split3",
    "pt920b",
    "rtilde-diff",
    "e2-coeff",
)


def lemma_check(name: str, n: int) -> bool:
    """Both sides of the named finite identity, compared exactly."""
    if n < 1:
        raise QSeriesError("lemma index must be >= 1")
    if name == "split1":
        lhs = _dsum(
            2 * n,
            lambda a, b: (3 * a + b - 1) % 6 == 0,
            lambda a, b: rat(-3 * a + b - 1, 6),
            lambda a, b: rat(3 * a + b - 1, 6),
            rat(1, 6),
            rat(1, 6),
        )
        s1 = sum(b for a, b in positive_divisor_pairs(2 * n) if b < 3 * a and (a + b) % 2 == 1)
        s2 = sum(a for a, b in positive_divisor_pairs(2 * n) if b > 3 * a and (a + b) % 2 == 1)
        return lhs == rat(s1, 3) - s2
    if name == "t1irr":
        lhs = sum(b for a, b in positive_divisor_pairs(2 * n) if b > 3 * a and (a + b) % 2 == 1)
        rest = sum(b for a, b in positive_divisor_pairs(2 * n) if b < 3 * a and (a + b) % 2 == 1)
        return lhs == 3 * sigma(n) - 4 * sigma(rat(n, 2)) - rest
    if name == "key1-sum":
        lhs = ZERO
        m = 0
        while True:
            hit = False
            for mm in {m, -m}:
                if 3 * mm * mm + mm <= 2 * n:
                    hit = True
                    lhs += (6 * mm + 1) * coeff_c("f", rat(2 * n - 3 * mm * mm - mm, 2))
            if not hit and m > 0:
                break
            m += 1
        rhs = -4 * sigma(n) - 16 * sigma(rat(n, 2)) + 4 * sum(
            3 * a + b
            for a, b in positive_divisor_pairs(2 * n)
            if b > 3 * a and (a + b) % 2 == 1
        )
        return lhs == rhs
    if name == "split2":
        lhs = -6 * _dsum(
            4 * n + 1,
            lambda a, b: (3 * a - b - 2) % 12 == 0,
            lambda a, b: rat(3 * a - b - 2, 12),
            lambda a, b: rat(3 * a + b - 4, 12),
            rat(1, 6),
            rat(1, 3),
        )
        return lhs == _S1(n) - 3 * _S2(n)
    if name == "s1gen":
        return rat(_S1(n)) == _series_coeff("s1gen", n)
    if name == "s2gen":
        return rat(_S2(n)) == _series_coeff("s2gen", n)
    if name == "split3":
        # the sign-free form is the one that holds for every n; the recursion
        # itself reapplies (-1)^(n+1) on the d-weight sum
        lhs = 6 * _dsum(
            4 * n + 3,
            lambda a, b: (3 * a - b - 4) % 12 == 0,
            lambda a, b: rat(3 * a - b - 4, 12),
            lambda a, b: rat(3 * a + b - 2, 12),
            rat(1, 3),
            rat(1, 6),
        )
        cond = lambda a, b: (3 * a - b - 4) % 12 == 0 or (3 * a - b + 4) % 12 == 0
        s1 = sum(3 * a for a, b in positive_divisor_pairs(4 * n + 3) if b >= 3 * a + 2 and cond(a, b))
        s2 = sum(b for a, b in positive_divisor_pairs(4 * n + 3) if b <= 3 * a - 1 and cond(a, b))
        return lhs == s1 - s2
    if name == "pt920b":
        lhs = ZERO
        m = 0
        while True:
            hit = False
            for mm in {m, -m}:
                if 3 * mm * mm + 2 * mm + 1 <= n:
                    hit = True
                    k = n - 3 * mm * mm - 2 * mm - 1
                    c = coeff_c("omega", k)
                    if k % 2 == 1:
                        c = -c
                    lhs += (3 * mm + 1) * c
            if not hit and m > 0:
                break
            m += 1
        mid = 6 * r_n(n)
        mid -= sum(
            a
            for a, b in positive_divisor_pairs(n)
            if a <= 3 * b - 1 and (a - 3 * b) % 12 in (2, 4, 8, 10)
        )
        mid += 3 * sum(
            b
            for a, b in positive_divisor_pairs(n)
            if a >= 3 * b + 1 and (a - 3 * b) % 12 in (2, 4, 8, 10)
        )
        last = 6 * r_n(n)
        last -= sum(
            a for a, b in positive_divisor_pairs(n) if a <= 3 * b and (a + b) % 2 == 0
        )
        last += 3 * sum(
            b for a, b in positive_divisor_pairs(n) if a >= 3 * b and (a + b) % 2 == 0
        )
        return lhs == mid == last
    if name == "rtilde-diff":
        return r_n(n) - rtilde_n(n) == _series_coeff("rdiff", n) / 6
    if name == "e2-coeff":
        lhs = _series_coeff("c5lhs", n)
        rhs = 6 * rtilde_n(n)
        rhs += sum(a for a, b in positive_divisor_pairs(n) if a > 3 * b and (a + b) % 2 == 0)
        rhs += 3 * sum(
            b for a, b in positive_divisor_pairs(n) if a > 3 * b - 2 and (a + b) % 2 == 0
        )
        return lhs == rhs
    raise QSeriesError(f"unknown lemma: {name!r}")
