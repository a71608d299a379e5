from fractions import Fraction

import mpmath
import pytest

from pertinv.errors import InputError, MathAssertionError
from pertinv.jones import FramedLink, jones_series
from pertinv.stationary import (
    gauss_moment_shifted,
    half_line_sine_moment,
    half_line_trig_moment,
    meridian_sum_identity,
    poisson_identity,
    schur_update,
    step_integrate,
    twist_integral_check,
)


def contour_integral(f, l, K, shift=0):
    """int_R f(a) exp(i pi K l a^2/2 + i pi shift a) da on the steepest descent line."""
    sg = 1 if l > 0 else -1
    c = -mpmath.mpf(shift) / (K * l)
    rot = mpmath.expjpi(mpmath.mpf(sg) / 4)

    def g(t):
        a = c + rot * t
        return f(a) * mpmath.exp(1j * mpmath.pi * (K * l * a * a / 2 + shift * a)) * rot

    return mpmath.quad(g, [-mpmath.inf, 0, mpmath.inf])


@pytest.mark.parametrize("power,l,shift", [(0, 1, 0), (2, 1, 0), (4, -2, 0), (1, 1, 1), (3, Fraction(3, 2), -2), (2, -1, 3)])
def test_gauss_moment_against_quadrature(power, l, shift):
    K = 60
    with mpmath.workdps(30):
        want = contour_integral(lambda a: a**power, float(l), K, shift)
        got = gauss_moment_shifted(0, l, shift, 14, power=power).approx(K, 30)
        assert abs(got - want) < 1e-12 * abs(want)


@pytest.mark.parametrize("m,l", [(0, 1), (1, 1), (0, -3), (2, Fraction(1, 2))])
def test_half_line_sine_moment_against_quadrature(m, l):
    K = 80
    with mpmath.workdps(30):
        full = contour_integral(lambda a: a ** (2 * m + 1) * mpmath.sin(mpmath.pi * a), float(l), K)
        got = half_line_sine_moment(m, l, 16).approx(K, 30)
        assert abs(got - full / 2) < 1e-10 * abs(full)


@pytest.mark.parametrize("m,l", [(0, 1), (1, -2), (3, 5)])
def test_two_routes_to_the_sine_moment_agree(m, l):
    a = half_line_sine_moment(m, l, 8)
    b = half_line_trig_moment(m, l, 8)
    assert a.prefactor == b.prefactor and a.series.truncate(8) == b.series.truncate(8)


@pytest.mark.parametrize("alpha", range(1, 8))
def test_twist_integral(alpha):
    assert twist_integral_check(alpha, 6)[0]


@pytest.mark.parametrize("K", [5, 7, 11, 13])
def test_meridian_and_poisson(K):
    assert all(meridian_sum_identity(a, K) for a in range(1, K))
    assert poisson_identity(K)[0]


def test_meridian_range():
    with pytest.raises(InputError):
        meridian_sum_identity(0, 5)


def test_zero_pivot():
    s = jones_series(FramedLink.hopf_chain([0, 0]), 4)
    with pytest.raises(MathAssertionError, match="zero pivot"):
        step_integrate(s, 0, 2)
    with pytest.raises(MathAssertionError):
        schur_update([[0, 1], [1, 0]], 0)


def test_schur_update():
    L = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    assert schur_update(L, 0) == [[Fraction(5, 2)]]
    assert schur_update(L, 1) == [[Fraction(5, 3)]]


def test_step_needs_enough_input_order():
    s = jones_series(FramedLink.unknot(2), 3)
    with pytest.raises(InputError):
        step_integrate(s, 0, 2)
    with pytest.raises(InputError):
        step_integrate(s, 1, 1)
