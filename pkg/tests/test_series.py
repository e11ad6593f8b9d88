from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from csd.series import (WallFunction, wf_mul, wf_pow, wf_coeff_pow, LaurentPoly,
                        lp_truncate, lp_add, lp_mul, lp_scale, wall_cross)

F = Fraction


def wf_pow_naive(f, e, K):
    """Oracle: repeated truncated multiplication (inverse for negatives)."""
    one = WallFunction(f.direction, [])
    if e < 0:
        # g with f*g = 1 mod order K, found coefficient by coefficient
        inv = [F(0)] * K
        for k in range(1, K + 1):
            s = -f.coeff(k)
            for j in range(1, k):
                s -= f.coeff(j) * inv[k - j - 1]
            inv[k - 1] = s
        return wf_pow_naive(WallFunction(f.direction, inv), -e, K)
    out = one
    for _ in range(e):
        out = wf_mul(out, f, K)
    return out


def test_wallfunction_basics():
    f = WallFunction((1, -1), [1, 0, F(1, 2)])
    assert f.coeff(0) == 1
    assert f.coeff(1) == 1
    assert f.coeff(3) == F(1, 2)
    assert f.coeff(7) == 0
    assert f.terms() == [(1, F(1)), (3, F(1, 2))]
    with pytest.raises(ValueError):
        WallFunction((2, -2), [1])


def test_wf_mul():
    f = WallFunction((0, 1), [1])
    assert wf_mul(f, f, 4).coeffs == (2, 1)


def test_wf_pow_small():
    f = WallFunction((0, 1), [1])
    assert wf_pow(f, 3, 5).coeffs == (3, 3, 1)
    assert wf_pow(f, -1, 4).coeffs == (-1, 1, -1, 1)
    assert wf_pow(f, 0, 4).is_one()


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4),
       st.integers(-4, 8))
@settings(max_examples=60)
def test_wf_pow_matches_naive(coeffs, e):
    f = WallFunction((1, 1), coeffs)
    assert wf_pow(f, e, 8).coeffs == wf_pow_naive(f, e, 8).coeffs


@given(st.lists(st.integers(-2, 2), min_size=1, max_size=3),
       st.integers(-3, 4), st.integers(-3, 4))
@settings(max_examples=40)
def test_wf_pow_additive(coeffs, e1, e2):
    f = WallFunction((1, 0), coeffs)
    lhs = wf_mul(wf_pow(f, e1, 6), wf_pow(f, e2, 6), 6)
    assert lhs.coeffs == wf_pow(f, e1 + e2, 6).coeffs


@given(st.integers(1, 3), st.integers(-4, 9), st.integers(0, 9))
def test_wf_coeff_pow_single_term(j, e, k):
    f = WallFunction((1, 2), [0] * (j - 1) + [1])
    expect = wf_pow(f, e, 10).coeff(k) if k else F(1)
    assert wf_coeff_pow(f, e, k) == expect


def test_wf_coeff_pow_multi_term():
    f = WallFunction((0, 1), [1, 2])
    assert wf_coeff_pow(f, 3, 4) == wf_pow(f, 3, 6).coeff(4)


def test_wf_coeff_pow_huge_order_is_cheap():
    f = WallFunction((0, 1), [0, 1])
    # binomial fast path: no series of length 10**5 is ever built
    assert wf_coeff_pow(f, 2, 10) == 0
    assert wf_coeff_pow(f, 200000, 200000) > 0
    assert wf_coeff_pow(f, -2, 6) == -4


def laurent(fd, terms, base, order):
    return lp_truncate(fd, {tuple(k): F(v) for k, v in terms.items()}, base, order)


def test_lp_ops(a2):
    p = laurent(a2, {(2, 1): 1, (1, 1): 2}, (2, 1), 6)
    q = laurent(a2, {(0, 0): 1, (-1, 0): 1}, (0, 0), 6)
    s = lp_mul(a2, p, q)
    assert s.terms[(2, 1)] == 1
    assert s.terms[(1, 1)] == 3
    assert s.terms[(0, 1)] == 2
    assert lp_add(a2, p, lp_scale(p, -1)).terms == {}


def test_lp_truncate_drops_deep_terms(a2):
    p = laurent(a2, {(0, 0): 1, (-4, 0): 1}, (0, 0), 3)
    assert (-4, 0) not in p.terms
    with pytest.raises(ValueError):
        laurent(a2, {(1, 0): 1}, (0, 0), 3)


def test_wall_cross_a2(a2):
    # crossing the vertical-axis wall sends z^(1,0) to z^(1,0)*(1+z^(0,1))
    f = WallFunction((0, 1), [1])
    p = LaurentPoly.monomial((1, 0), 6)
    out = wall_cross(a2, p, f, (1, 0), 1)
    assert out.terms == {(1, 0): 1, (1, 1): 1}
    # the inverse crossing undoes it
    back = wall_cross(a2, out, f, (1, 0), -1)
    assert back.terms == {(1, 0): 1}


def test_wall_cross_invariant_monomial(a2):
    f = WallFunction((0, 1), [1])
    p = LaurentPoly.monomial((0, 1), 6)
    out = wall_cross(a2, p, f, (1, 0), 1)
    assert out.terms == {(0, 1): 1}


def test_wall_cross_g2_weights(g2):
    # d_2 = 3: pairing of the normal (0,1) with f_2 is 1/3, so z^(0,3)
    # picks up the third power of the wall function
    f = WallFunction((-1, 0), [1])
    p = LaurentPoly.monomial((0, 3), 8)
    out = wall_cross(g2, p, f, (0, 1), 1)
    assert out.terms == {(0, 3): 1, (-1, 3): 3, (-2, 3): 3, (-3, 3): 1}
