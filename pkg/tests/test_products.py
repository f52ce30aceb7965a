import pytest

from qmock.poles import PoleFactor
from qmock.products import (
    ProductSpec,
    ZeroProductError,
    bracket_factored,
    bracket_inf,
    bracket_is_zero,
    poch_factored,
    poch_finite,
    poch_inf,
    poch_is_zero,
    product,
)
from qmock.rational import rat
from qmock.rings import LaurentPoly, QSeries, coeff, coeff_rat, first_mismatch, mono, series_mul


def ints(s, lo, hi):
    return [int(coeff_rat(s, n)) for n in range(lo, hi)]


# -- independent oracles -------------------------------------------------------


def pentagonal_coeffs(order):
    """(q;q)_inf by the pentagonal number theorem (direct bilateral sum)."""
    out = [0] * order
    k = 0
    while k * (3 * k - 1) // 2 < order or k * (3 * k + 1) // 2 < order:
        for e in {k * (3 * k - 1) // 2, k * (3 * k + 1) // 2}:
            if e < order:
                out[e] += (-1) ** k
        k += 1
    return out


def distinct_partition_counts(order):
    """Partitions into distinct parts, by dynamic programming."""
    out = [0] * order
    out[0] = 1
    for part in range(1, order):
        for n in range(order - 1, part - 1, -1):
            out[n] += out[n - part]
    return out


def test_poch_finite_basic():
    s = poch_finite(mono(-1, 0, 1), 2, 1, 8)
    assert ints(s, 0, 4) == [1, 1, 1, 1]  # (1+q)(1+q^2) = 1+q+q^2+q^3
    s = poch_finite(mono(1, 0, 1), 1, 2, 8)
    assert ints(s, 0, 2) == [1, -1]
    s = poch_finite(mono(1, 1, 0), 2, 1, 8)  # (1-x)(1-xq) = 1 - x - xq + x^2 q
    assert coeff(s, 0) == LaurentPoly({0: rat(1), 1: rat(-1)})
    assert coeff(s, 1) == LaurentPoly({1: rat(-1), 2: rat(1)})


def test_poch_inf_pentagonal():
    s = poch_inf(mono(1, 0, 1), 1, 40)
    assert ints(s, 0, 6) == [1, -1, -1, 0, 0, 1]
    assert ints(s, 0, 40) == pentagonal_coeffs(40)


def test_poch_inf_distinct_partitions():
    s = poch_inf(mono(-1, 0, 1), 1, 30)
    assert ints(s, 0, 5) == [1, 1, 1, 2, 2]
    assert ints(s, 0, 30) == distinct_partition_counts(30)


def test_poch_inf_x_argument():
    s = poch_inf(mono(1, 1, 0), 1, 6)
    assert coeff(s, 1) == LaurentPoly({1: rat(-1), 2: rat(1)})  # -x + x^2


def test_poch_inf_negative_valuation():
    # (-1/q; q^2)_inf = (1 + q^-1)(1 + q)(1 + q^3)...
    s = poch_inf(mono(-1, 0, -1), 2, 6)
    assert s.val == -1
    assert int(coeff_rat(s, -1)) == 1
    check = series_mul(
        s, poch_inf(mono(-1, 0, -1), 2, 6).lp_mul(LaurentPoly.const(0)) + QSeries.one(7)
    )
    assert first_mismatch(check, s) is None


def test_poch_telescoping():
    a = mono(-1, 0, 1)
    n, b, order = 3, 2, 24
    lhs = poch_inf(a, b, order)
    rhs = series_mul(
        poch_finite(a, n, b, order),
        poch_inf(mono(-1, 0, 1 + b * n), b, order),
    )
    assert first_mismatch(lhs, rhs) is None


def test_bracket_basic():
    s = bracket_inf([mono(1, 1, 0)], 1, 5)
    assert coeff(s, 0) == LaurentPoly({0: rat(1), 1: rat(-1)})  # 1 - x
    s = bracket_inf([mono(-1, 0, 0)], 1, 5)
    assert coeff_rat(s, 0) == 2  # (-1;q)(-q;q) -> factor (1+1)
    assert bracket_is_zero([mono(1, 0, 1)], 1)
    z = bracket_inf([mono(1, 0, 1)], 1, 5)
    assert z.is_zero_window()


def test_bracket_reflection():
    # [a] and [q^B/a] agree after normalizing the leading monomial
    a = mono(1, 1, 1)
    b = 3
    s1 = bracket_inf([a], b, 20)
    s2 = bracket_inf([mono(1, -1, 2)], b, 20)
    assert first_mismatch(s1, s2) is None


def test_product_spec_dispatch():
    s1 = product(ProductSpec(mono(1, 0, 1), 1, 2), 9)
    s2 = poch_finite(mono(1, 0, 1), 2, 1, 9)
    assert first_mismatch(s1, s2) is None
    s3 = product(ProductSpec(mono(1, 0, 1), 1, None), 9)
    assert ints(s3, 0, 6) == [1, -1, -1, 0, 0, 1]


def test_poch_is_zero_predicate():
    assert poch_is_zero(mono(1, 0, 0), 1)
    assert poch_is_zero(mono(1, 0, -2), 2)
    assert not poch_is_zero(mono(1, 0, 2), 2)  # factors start at q^2
    assert not poch_is_zero(mono(-1, 0, 0), 1)
    assert not poch_is_zero(mono(1, 1, 0), 1)


def test_factored_roundtrip_and_poles():
    # [x; q] has the q^0 factor (1-x); the rest inverts cleanly
    f = bracket_factored([mono(1, 1, 0)], 1, 16)
    assert f.poles == (PoleFactor(rat(1), 1),)
    direct = bracket_inf([mono(1, 1, 0)], 1, 16)
    assert first_mismatch(f.value(), direct) is None
    # [x^2; q^2] splits into (1-x)(1+x)
    f2 = bracket_factored([mono(1, 2, 0)], 2, 16)
    assert f2.poles == (PoleFactor(rat(-1), 1), PoleFactor(rat(1), 1))


def test_factored_inverse():
    f = bracket_factored([mono(-1, 0, 1)], 1, 16)
    ps = f.inverse_ps()
    assert ps.poles == ()
    prod = series_mul(ps.qs, bracket_inf([mono(-1, 0, 1)], 1, 16))
    assert first_mismatch(prod, QSeries.one(16)) is None


def test_factored_inverse_negative_exponent():
    # arg x*q^-1 exercises the unit rewrite path and leaves the k=1 factor
    # (1 - x*q^0) as a recorded pole
    a = mono(1, 1, -1)
    f = poch_factored(a, 1, 16)
    val = f.value()
    direct = poch_inf(a, 1, 16)
    assert first_mismatch(val, direct) is None
    ps = f.inverse_ps()
    assert ps.poles == (PoleFactor(rat(1), 1),)
    prod = series_mul(ps.qs, direct)
    one_minus_x = QSeries.one(prod.order).lp_mul(LaurentPoly({0: rat(1), 1: rat(-1)}))
    assert first_mismatch(prod, one_minus_x) is None


def test_factored_zero_raises():
    with pytest.raises(ZeroProductError, match="identically zero"):
        poch_factored(mono(1, 0, 0), 1, 8)
