from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pertinv.errors import MathAssertionError
from pertinv.scalars import SymbolicScalar
from pertinv.series import (
    ColorSeries,
    KSeries,
    change_variable_to_zeta,
    color_series_mul,
    data_exp_linear,
    data_mul,
    delta_from_sn,
    series_exp,
    series_log,
    sinc_series,
    sn_from_delta,
    zeta_series_to_k,
)

small = st.fractions(-3, 3, max_denominator=7)


def test_log_sinc_gives_s3_values():
    s = [x.to_rational() for x in sn_from_delta(sinc_series(6))]
    assert s == [0, Fraction(1, 6), 0, Fraction(-1, 180), 0, Fraction(1, 2835)]


@given(st.lists(small, min_size=1, max_size=5))
def test_exp_log_round_trip(sn):
    d = delta_from_sn(sn)
    assert [x.to_rational() for x in sn_from_delta(d)] == sn


@given(st.lists(small, min_size=1, max_size=4))
def test_series_exp_log_inverse(c):
    s = KSeries.from_reduced([0] + c)
    assert series_log(series_exp(s)) == s


def test_pi_cancellation_guard():
    bad = KSeries([1, SymbolicScalar.rational(1)])
    with pytest.raises(MathAssertionError):
        sn_from_delta(bad)
    with pytest.raises(MathAssertionError):
        sn_from_delta(KSeries([2, 0]))


@given(st.lists(small, min_size=1, max_size=4))
def test_change_of_variable_inverts_forward_substitution(sn):
    n0 = len(sn)
    s = delta_from_sn(sn)
    lam = change_variable_to_zeta(s, n0)
    back = zeta_series_to_k(lam, n0)
    assert back.truncate(n0) == s.truncate(n0)


def test_change_of_variable_trivial():
    lam = change_variable_to_zeta(KSeries.one(3), 3)
    assert lam[0] == SymbolicScalar.rational(1) and all(x.is_zero() for x in lam[1:])


@given(st.lists(small, min_size=2, max_size=2))
def test_exp_linear_is_multiplicative(v):
    a = data_exp_linear(v, 4)
    b = data_exp_linear([-x for x in v], 4)
    assert data_mul(a, b, 4) == {(0, (0, 0)): 1}


def test_color_series_json_round_trip():
    s = ColorSeries(2, 3, {(0, (0, 0)): Fraction(1), (2, (1, 0)): Fraction(-1, 6)}, [[1, 2], [2, Fraction(1, 2)]])
    assert ColorSeries.from_json(s.to_json()) == s


def test_color_series_mul_adds_diagonals():
    a = ColorSeries(1, 2, {(0, (0,)): Fraction(1)}, [[2]])
    b = ColorSeries(1, 2, {(0, (0,)): Fraction(1), (2, (1,)): Fraction(1)}, [[3]])
    c = color_series_mul(a, b)
    assert c.linking == ((5,),) and c.data == b.data
