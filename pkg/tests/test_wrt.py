import mpmath
import pytest

from pertinv.cyclotomic import CycNumber
from pertinv.errors import InputError, MathAssertionError
from pertinv.jones import FramedLink
from pertinv.surgery import load_registry
from pertinv.wrt import (
    ohtsuki_congruence_check,
    ohtsuki_coefficients,
    tau,
    z_prime,
    z_prime_ratio,
    z_s3,
    z_so3,
    z_wrt,
)

U, H = FramedLink.unknot, FramedLink.hopf_chain


def lens(p):
    """L(p, 1) as surgery on the p-framed unknot."""
    return U(p)


def direct_sum(link_framing, K):
    # Z(M) for the p-framed unknot, written out with floats
    p = link_framing
    with mpmath.workdps(30):
        s = mpmath.mpc(0)
        for a in range(1, K):
            s += mpmath.sin(mpmath.pi * a / K) ** 2 * mpmath.expjpi(mpmath.mpf(p * (a * a - 1)) / (2 * K))
        # Z(S^3) sqrt(2/K)^N / sin(pi/K) with N = 1
        s *= 2 / mpmath.mpf(K)
        sig = (p > 0) - (p < 0)
        return s * mpmath.expjpi(mpmath.mpf(-3 * (K - 2) * sig) / (4 * K))


@pytest.mark.parametrize("p,K", [(2, 5), (3, 7), (-4, 5), (5, 11), (-3, 13)])
def test_unknot_against_float_sum(p, K):
    got = z_wrt(U(p), K).approx()
    assert abs(got - direct_sum(p, K)) < 1e-20


@pytest.mark.parametrize("K", [3, 5, 7])
def test_blow_down_and_sphere(K):
    s3 = z_s3(K)
    assert z_wrt(FramedLink.empty(), K).value == s3
    assert z_wrt(U(1), K).value == s3
    assert z_wrt(U(-1), K).value == s3
    assert z_wrt(H([0, 0]), K).value == s3


@pytest.mark.parametrize("K", [5, 7])
def test_registry_invariance(K):
    for entry in load_registry():
        p, q = entry["presentations"]
        if p.ncomp + q.ncomp <= 4:
            assert z_wrt(p, K).value == z_wrt(q, K).value, entry["name"]


@pytest.mark.parametrize("K", [5, 7, 11])
@pytest.mark.parametrize("p", [3, 5, -3])
def test_odd_color_sum_equals_ratio(p, K):
    assert z_prime_ratio(lens(p), K) == z_so3(lens(p), K)


def test_sphere_normalization():
    for K in (5, 7, 11):
        assert z_prime(FramedLink.empty(), K) == CycNumber.one(K)
        assert tau(U(1), K) == CycNumber.one(8 * K)


def test_even_lens_space_has_vanishing_level_three():
    # the colors a and 3 - a cancel, so the ratio does not exist
    assert z_wrt(U(2), 3).value.is_zero()
    with pytest.raises(MathAssertionError, match="Z\\(M;3\\) = 0"):
        z_prime(U(2), 5, strict=True)
    assert z_prime(U(2), 5) == z_so3(U(2), 5)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("K", [5, 7, 11, 13])
def test_congruence(p, K):
    if p % K == 0:
        with pytest.raises(InputError):
            ohtsuki_congruence_check(U(p), K, 2)
        return
    rep = ohtsuki_congruence_check(U(p), K, 2)
    assert rep.ok, rep.to_json()
    assert rep.a[0] % K == rep.rows[0].lambda_vee


def test_coefficients_are_integers_for_sphere():
    assert ohtsuki_coefficients(U(1), 7)[:3] == [1, 0, 0]


def test_poincare_sphere_congruence():
    rep = ohtsuki_congruence_check(FramedLink.torus_knot(2, 3, 1), 7, 2)
    assert rep.ok
