from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pertinv.ratfunc import RatFunc, limit_at_zero, sign_of

fr = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def ratfuncs(draw):
    num = draw(st.lists(fr, min_size=1, max_size=3))
    den = draw(st.lists(fr, min_size=1, max_size=3).filter(lambda d: any(d)))
    return RatFunc(num, den)


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a - a == RatFunc(())
    if b:
        assert (a / b) * b == a


def test_limits_and_signs():
    e = RatFunc.eps()
    assert limit_at_zero(3 + e) == 3
    assert sign_of(e) == 1 and sign_of(-e) == -1
    assert sign_of(Fraction(-2)) == -1
    x = (e * e + 2 * e) / e
    assert x.limit_at_zero() == 2
    with pytest.raises(ZeroDivisionError):
        (1 / e).limit_at_zero()
    assert (1 / e).has_pole_at_zero()
