import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmock.lambert import (
    ALL_Z,
    NONZERO_Z,
    BilateralSpec,
    LambertPoleError,
    LambertSpecError,
    Range,
    bilateral_sum,
    detect_q0_poles,
    from_k,
    lam,
)
from qmock.poles import PoleFactor
from qmock.products import poch_inf
from qmock.rational import rat
from qmock.rings import LaurentPoly, coeff, coeff_rat, first_mismatch, mono


def sigma_oracle(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def test_pentagonal_series():
    s, poles = bilateral_sum(lam(sign=-1, a2=rat(3, 2), a1=rat(1, 2)), 40)
    assert poles == ()
    assert [int(coeff_rat(s, n)) for n in range(6)] == [1, -1, -1, 0, 0, 1]
    assert first_mismatch(s, poch_inf(mono(1, 0, 1), 1, 40)) is None


def test_eisenstein_sigma():
    # sum_{k>=1} q^k/(1-q^k)^2 has sigma(n) as q^n coefficient
    s, _ = bilateral_sum(
        lam(power=mono(1, 0, 1), den=(mono(1, 0, 0), 1, 2), rng=from_k(1)), 201
    )
    assert [int(coeff_rat(s, n)) for n in range(1, 6)] == [1, 3, 4, 7, 6]
    for n in range(1, 201):
        assert coeff_rat(s, n) == sigma_oracle(n)


def test_half_term_at_pole_constant():
    # k = 0 term of a sum with denominator (1+q^k): exactly 1/2
    s, _ = bilateral_sum(
        lam(sign=-1, a2=rat(3, 2), a1=rat(1, 2), den=(mono(-1, 0, 0), 1)), 10
    )
    matching = lam(sign=-1, a2=rat(3, 2), a1=rat(1, 2), den=(mono(-1, 0, 0), 1), rng=NONZERO_Z)
    rest, _ = bilateral_sum(matching, 10)
    assert coeff_rat(s, 0) - coeff_rat(rest, 0) == rat(1, 2)


def test_exact_pole_error():
    with pytest.raises(LambertPoleError, match="exact pole at k = 0"):
        bilateral_sum(lam(a2=1, den=(mono(1, 0, 0), 1)), 10)


def test_exact_pole_skipped_by_zero_weight():
    # weight k vanishes at the offending index
    s, poles = bilateral_sum(lam(alpha=0, beta=1, a2=3, a1=2, den=(mono(-1, 0, 0), 6)), 30)
    assert poles == ()
    assert coeff_rat(s, 0) == 0


def test_non_integral_exponent_error():
    with pytest.raises(LambertSpecError, match="non-integral q-exponent at k ="):
        bilateral_sum(lam(a2=rat(1, 2), a1=0), 10)


def test_a0_bilateral_rejected():
    with pytest.raises(LambertSpecError, match="unilateral"):
        bilateral_sum(lam(power=mono(1, 0, 1), den=(mono(1, 0, 0), 1, 2)), 10)


def test_detect_poles_lat2_shapes():
    lhs = lam(sign=-1, a2=rat(3, 2), a1=rat(1, 2), den=(mono(1, 1, 0), 1))
    assert detect_q0_poles(lhs) == (PoleFactor(rat(1), 1),)
    mid = lam(a2=rat(3, 2), a1=rat(1, 2), den=(mono(-1, 1, 0), 1, 2))
    assert detect_q0_poles(mid) == (PoleFactor(rat(-1), 1), PoleFactor(rat(-1), 1))
    off = lam(a2=rat(3, 2), a1=rat(1, 2), den=(mono(-1, 1, 1), 2))
    assert detect_q0_poles(off) == ()


def test_pole_cleared_by_prefactor():
    # (1-x) * sum (-1)^k q^(k(3k+1)/2)/(1-x q^k): the k=0 term becomes exactly 1
    pref = LaurentPoly({0: rat(1), 1: rat(-1)})
    spec = lam(sign=-1, a2=rat(3, 2), a1=rat(1, 2), den=(mono(1, 1, 0), 1), prefactor=pref)
    assert detect_q0_poles(spec) == ()
    s, poles = bilateral_sum(spec, 12)
    assert poles == ()
    bare = lam(sign=-1, a2=rat(3, 2), a1=rat(1, 2), den=(mono(1, 1, 0), 1), rng=NONZERO_Z)
    rest, _ = bilateral_sum(bare, 12)
    diff = s - rest.lp_mul(pref)
    assert coeff(diff, 0) == 1


def test_reported_pole_series_is_cleared_numerator():
    # without prefactor the k=0 pole (1-x) is reported and the series carries it
    spec = lam(sign=-1, a2=rat(3, 2), a1=rat(1, 2), den=(mono(1, 1, 0), 1))
    s, poles = bilateral_sum(spec, 12)
    assert poles == (PoleFactor(rat(1), 1),)
    pref_spec = lam(
        sign=-1, a2=rat(3, 2), a1=rat(1, 2), den=(mono(1, 1, 0), 1),
        prefactor=LaurentPoly({0: rat(1), 1: rat(-1)}),
    )
    cleared, _ = bilateral_sum(pref_spec, 12)
    assert first_mismatch(s, cleared) is None


def test_linearity_in_weight():
    kw = dict(sign=-1, a2=rat(3, 2), a1=rat(1, 2), den=(mono(-1, 0, 1), 1))
    s_ab, _ = bilateral_sum(lam(alpha=rat(2, 3), beta=rat(5), **kw), 25)
    s_a, _ = bilateral_sum(lam(alpha=1, beta=0, **kw), 25)
    s_b, _ = bilateral_sum(lam(alpha=0, beta=1, **kw), 25)
    assert first_mismatch(s_ab, s_a.scaled(rat(2, 3)) + s_b.scaled(5)) is None


def test_negative_step_denominator_terminates():
    # terms q^(5k)/(1 - q^(3-2k)): denominator exponent turns negative, the
    # rewrite then adds 2k-3 to the valuation
    s, _ = bilateral_sum(lam(power=mono(1, 0, 5), den=(mono(1, 0, 3), -2), rng=from_k(0)), 20)
    # k=0 term: q^0/(1-q^3) = 1 + q^3 + q^6 + ...
    assert coeff_rat(s, 0) == 1


# -- the symmetry rewrites used after (t9f) and (leid57) -----------------------


def test_t9f_index_symmetry():
    a, _ = bilateral_sum(lam(sign=-1, a2=3, a1=1, den=(mono(-1, 0, 0), 6)), 60)
    b, _ = bilateral_sum(lam(sign=-1, a2=3, a1=5, den=(mono(-1, 0, 0), 6)), 60)
    assert first_mismatch(a, b) is None


def test_t9f_denominator_split():
    lhs, _ = bilateral_sum(lam(sign=-1, a2=3, a1=1, den=(mono(-1, 0, 0), 2)), 60)
    parts = []
    for a1, sgn in ((1, 1), (3, -1), (5, 1)):
        s, _ = bilateral_sum(lam(sign=-1, a2=3, a1=a1, den=(mono(-1, 0, 0), 6)), 60)
        parts.append(s.scaled(sgn))
    assert first_mismatch(lhs, parts[0] + parts[1] + parts[2]) is None


def test_leid57_index_symmetry():
    a, _ = bilateral_sum(lam(sign=-1, a2=3, a1=5, scale=mono(1, 0, 1), den=(mono(1, 0, 3), 6)), 60)
    b, _ = bilateral_sum(lam(sign=-1, a2=3, a1=7, scale=mono(1, 0, 2), den=(mono(1, 0, 3), 6)), 60)
    assert first_mismatch(a, b) is None


def test_leid57_denominator_split():
    lhs, _ = bilateral_sum(lam(sign=-1, a2=3, a1=3, den=(mono(1, 0, 1), 2)), 60)
    parts = []
    for extra in (0, 1, 2):
        s, _ = bilateral_sum(
            lam(sign=-1, a2=3, a1=3 + 2 * extra, scale=mono(1, 0, extra), den=(mono(1, 0, 3), 6)),
            60,
        )
        parts.append(s)
    assert first_mismatch(lhs, parts[0] + parts[1] + parts[2]) is None


# -- cutoff soundness ----------------------------------------------------------

spec_strategy = st.builds(
    lambda a2x2, a1x2, sgn, e1, bm, L, p, alpha, beta, start: lam(
        alpha=alpha,
        beta=beta,
        sign=sgn,
        a2=rat(a2x2, 2),
        a1=rat(a1x2, 2),
        power=mono(1, 0, e1),
        den=(mono(-1, 0, bm), L, p),
        rng=ALL_Z if start is None else from_k(start),
    ),
    a2x2=st.integers(1, 6),
    a1x2=st.integers(-6, 6),
    sgn=st.sampled_from([1, -1]),
    e1=st.integers(-2, 2),
    bm=st.integers(-3, 3),
    L=st.integers(-3, 3).filter(lambda v: v != 0),
    p=st.sampled_from([1, 2]),
    alpha=st.integers(-3, 3),
    beta=st.integers(-2, 2),
    start=st.sampled_from([None, 0, 1, -2]),
)


@given(spec_strategy)
@settings(max_examples=40, deadline=None)
def test_cutoff_soundness(spec):
    # exponents a2 k^2 + a1 k + e1 k must be integral for all k: force parity
    if (spec.a2 + spec.a1).denominator != 1 or (spec.a2 - spec.a1).denominator != 1:
        return
    try:
        s1, _ = bilateral_sum(spec, 30)
        s2, _ = bilateral_sum(spec, 30, extra_cutoff=5)
    except LambertPoleError:
        return
    assert first_mismatch(s1, s2) is None
