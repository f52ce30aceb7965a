import pytest

from qmock.lambert import bilateral_sum, from_k, lam
from qmock.mockforms import (
    MockName,
    appell_form,
    cached_series,
    coeff_c,
    eulerian_series,
    negated_q,
    parity_part,
)
from qmock.rational import rat
from qmock.rings import QSeriesError, coeff_rat, first_mismatch, mono


def ints(s, hi, lo=0):
    return [int(coeff_rat(s, n)) for n in range(lo, hi)]


def test_f_small_coefficients():
    assert ints(eulerian_series("f", 4), 4) == [1, 1, -2, 3]


def test_omega_small_coefficients():
    assert ints(eulerian_series("omega", 5), 5) == [1, 2, 3, 4, 6]


def test_f_constant_term():
    assert coeff_c("f", 0) == 1


def test_B_constant_term():
    assert coeff_c("B", 0) == 1


def test_coeff_conventions():
    assert coeff_c("f", rat(3, 2)) == 0
    assert coeff_c("f", -4) == 0
    assert coeff_c("f", 2) == -2


def test_appell_agrees_with_eulerian():
    for name in ("f", "omega", "B"):
        a = appell_form(name, 60)
        e = eulerian_series(name, 60)
        assert first_mismatch(a, e) is None, name


def test_parity_parts():
    s = eulerian_series("omega", 12)
    ev = parity_part(s, "even")
    od = parity_part(s, "odd")
    assert first_mismatch(ev + od, s) is None
    assert ints(ev, 4) == [1, 0, 3, 0]
    with pytest.raises(QSeriesError, match="parity of bivariate series undefined"):
        from qmock.rings import LaurentPoly, QSeries

        bad = QSeries(0, [LaurentPoly({1: rat(1)})])
        parity_part(bad, "even")


def test_omega_parity_names():
    ev = eulerian_series(MockName.omega_even, 10)
    assert first_mismatch(ev, parity_part(eulerian_series("omega", 10), "even")) is None


def test_negated_q():
    s = eulerian_series("omega", 8)
    m = negated_q(s)
    assert ints(m, 5) == [1, -2, 3, -4, 6]
    assert first_mismatch(parity_part(s, "even") - parity_part(s, "odd"), m) is None


def test_ftilde_is_minus_two_nu2():
    ft = eulerian_series("Ftilde", 80)
    nu = eulerian_series("nu2", 80)
    assert first_mismatch(ft, nu.scaled(-2)) is None


def test_watson_specialization():
    # sum q^n/(1-q^n)^2 = -sum (-1)^n q^(n(n+1)/2) (1+q^n)/(1-q^n)^2
    order = 120
    lhs, _ = bilateral_sum(
        lam(power=mono(1, 0, 1), den=(mono(1, 0, 0), 1, 2), rng=from_k(1)), order
    )
    p1, _ = bilateral_sum(
        lam(sign=-1, a2=rat(1, 2), a1=rat(1, 2), den=(mono(1, 0, 0), 1, 2), rng=from_k(1)),
        order,
    )
    p2, _ = bilateral_sum(
        lam(sign=-1, a2=rat(1, 2), a1=rat(3, 2), den=(mono(1, 0, 0), 1, 2), rng=from_k(1)),
        order,
    )
    assert first_mismatch(lhs, (p1 + p2).scaled(-1)) is None


def test_cached_series_grows():
    s1 = cached_series("f", 10)
    s2 = cached_series("f", 200)
    assert s2.order >= 200
    assert first_mismatch(s1.truncated(10), s2.truncated(10)) is None


def test_unknown_name():
    with pytest.raises(QSeriesError, match="unknown mock theta function"):
        eulerian_series("psi6", 10)
