from fractions import Fraction

import cmath
import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from pertinv.cyclotomic import (
    CycNumber,
    gauss_kappa,
    gauss_sum_closed,
    gauss_sum_direct,
    legendre,
    quadratic_gauss_sum,
    sin_pi,
    sqrt_K,
    sqrt_two,
    vee,
    zeta_minus_one_collect,
    zeta_minus_one_expand,
)
from pertinv.errors import InputError, MathAssertionError

ORDERS = [24, 40, 56]


@st.composite
def elements(draw, order=None):
    order = order or draw(st.sampled_from(ORDERS))
    terms = {draw(st.integers(0, order - 1)): draw(st.fractions(-4, 4, max_denominator=5)) for _ in range(draw(st.integers(0, 4)))}
    return CycNumber.from_exponents(order, terms)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_field_axioms(data):
    n = data.draw(st.sampled_from(ORDERS))
    a, b = data.draw(elements(n)), data.draw(elements(n))
    assert a + b == b + a
    with mpmath.workdps(40):
        assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < mpmath.mpf(10) ** -30
    if not b.is_zero():
        assert (a / b) * b == a


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_galois_is_a_ring_map(data):
    n = data.draw(st.sampled_from(ORDERS))
    a, b = data.draw(elements(n)), data.draw(elements(n))
    k = data.draw(st.sampled_from([k for k in range(1, n) if math.gcd(k, n) == 1]))
    assert (a * b).galois(k) == a.galois(k) * b.galois(k)
    with mpmath.workdps(40):
        assert abs(a.conj().to_complex() - a.to_complex().conjugate()) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("K", [3, 5, 7, 11, 13])
def test_square_roots(K):
    n = 8 * K
    r = sqrt_K(K)
    assert r * r == CycNumber.from_rational(n, K)
    assert complex(r.to_complex()).real > 0
    assert sqrt_two(n) * sqrt_two(n) == CycNumber.from_rational(n, 2)
    g = quadratic_gauss_sum(K)
    assert g * g == CycNumber.from_rational(n, K * legendre(-1, K))


def test_sin_pi_matches_float():
    for K in (5, 7):
        for a in range(1, K):
            assert complex(sin_pi(a, K).to_complex()).real == pytest.approx(math.sin(math.pi * a / K))


def test_embed_descend_round_trip():
    x = CycNumber.from_exponents(7, {1: 2, 3: Fraction(-1, 2)})
    y = x.embed(168)
    assert y.descend(7) == x
    with pytest.raises(ValueError):
        CycNumber.root(168, 1).descend(7)


@pytest.mark.parametrize("K", [5, 7, 11])
def test_gauss_sums_against_floats(K):
    for p, q, m in [(1, 1, 0), (2, -1, 3), (-3, 2, 1)]:
        qinv = pow(q, -1, K)
        direct = sum(cmath.exp(2j * math.pi * (p * qinv * a * a + 2 * m * a) / K) for a in range(K))
        assert complex(gauss_sum_closed(p, q, m, K).to_complex()) == pytest.approx(direct, abs=1e-12)
        assert gauss_sum_direct(p, q, m, K) == gauss_sum_closed(p, q, m, K)


def test_printed_branch_labels_fail():
    assert gauss_kappa(5) == 1 and gauss_kappa(7) == -1
    assert gauss_sum_direct(1, 1, 0, 7) != gauss_sum_closed(1, 1, 0, 7, printed_labels=True)


def test_gauss_input_errors():
    with pytest.raises(InputError):
        gauss_sum_direct(1, 7, 0, 7)
    with pytest.raises(InputError):
        gauss_sum_closed(1, 1, 0, 9)


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6), st.sampled_from([5, 7, 11]))
def test_zeta_minus_one_round_trip(a, K):
    a = (a + [0] * (K - 1))[: K - 1]
    assert zeta_minus_one_expand(zeta_minus_one_collect(a, K), K) == a


def test_zeta_minus_one_examples():
    z2 = CycNumber.root(5, 2)
    assert zeta_minus_one_expand(z2, 5) == [1, 2, 1, 0]
    with pytest.raises(MathAssertionError):
        zeta_minus_one_expand(CycNumber.from_rational(5, Fraction(1, 2)), 5)
    with pytest.raises(MathAssertionError):
        zeta_minus_one_expand(CycNumber.root(40, 1), 5)


def test_vee():
    assert vee(3, 4, 7).residue == 6
    with pytest.raises(InputError):
        vee(1, 7, 7)
