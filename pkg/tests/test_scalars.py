from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from pertinv.scalars import Prefactor, SymbolicScalar

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def scalars(draw):
    terms = {}
    for d in draw(st.lists(st.integers(-3, 3), max_size=3, unique=True)):
        terms[d] = (draw(fracs), draw(fracs))
    return SymbolicScalar(terms)


@given(scalars(), scalars(), scalars())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == SymbolicScalar()


@given(scalars())
def test_parse_round_trip(a):
    assert SymbolicScalar.parse(str(a)) == a


@given(scalars(), scalars())
def test_approx_is_a_homomorphism(a, b):
    with mpmath.workdps(30):
        assert abs((a * b).approx(30) - a.approx(30) * b.approx(30)) < mpmath.mpf(10) ** -20


@given(fracs.filter(lambda x: x != 0), st.integers(-4, 4))
def test_single_term_inverse(r, n):
    x = SymbolicScalar.i_pi(n, r)
    assert x * x.inverse() == SymbolicScalar.rational(1)


def test_i_pi_powers():
    assert SymbolicScalar.i_pi(2) == SymbolicScalar.pi_power(2, -1)
    assert SymbolicScalar.i_pi(1).conjugate() == SymbolicScalar.i_pi(1, -1)
    assert str(SymbolicScalar.pi_power(2, Fraction(1, 6))) == "1/6·pi^2"
    assert SymbolicScalar.parse("-pi") == SymbolicScalar.pi_power(1, -1)


def test_to_rational_refuses_pi():
    with pytest.raises(ValueError):
        SymbolicScalar.pi_power(1).to_rational()


@given(st.integers(1, 60), st.integers(1, 60))
def test_prefactor_sqrt_squares(a, b):
    r = Fraction(a, b)
    p = Prefactor.sqrt(r)
    assert (p * p).split_gaussian()[0] == SymbolicScalar.rational(r)
    with mpmath.workdps(30):
        assert abs(p.approx(7) - mpmath.sqrt(mpmath.mpf(a) / b)) < mpmath.mpf(10) ** -25


@given(st.integers(0, 7), st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 40))
def test_prefactor_inverse(oct_, h2, hK, r):
    p = Prefactor.make(octant=oct_, half2=h2, halfK=hK, rho=Fraction(r, 3)) * Prefactor.sqrt(r)
    assert (p * p.inverse()).is_trivial()


def test_prefactor_validation():
    with pytest.raises(ValueError):
        Prefactor(0, 0, 0, 4, 1)


def test_split_gaussian_octants():
    g, rest = (Prefactor.phase(4)).split_gaussian()
    assert g == SymbolicScalar.rational(-1) and rest.is_trivial()
    g, rest = (Prefactor.phase(2)).split_gaussian()
    assert g == SymbolicScalar.imag_unit() and rest.is_trivial()
    g, rest = Prefactor.phase(1).split_gaussian()
    assert not rest.is_trivial()
