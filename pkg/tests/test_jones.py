from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from pertinv.errors import InputError
from pertinv.jones import (
    FramedLink,
    check_asl_bound,
    check_mm_bound,
    exact_numeric,
    family_grid,
    fusion_identities_check,
    jones_exact,
    jones_series,
    quantum_integer,
    series_numeric,
    theta,
)

U, H, T = FramedLink.unknot, FramedLink.hopf_chain, FramedLink.torus_knot


def test_unknot_is_quantum_integer():
    for K in (5, 7):
        for a in range(1, K):
            assert jones_exact(U(0), [a], K) == quantum_integer(a, K)


def test_framing_multiplies_by_theta():
    K = 7
    for a in range(1, K):
        assert jones_exact(U(3), [a], K) == jones_exact(U(0), [a], K) * theta(a, K, 3)


@pytest.mark.parametrize("link", family_grid()[:12])
def test_exact_matches_closed_form(link):
    K = 11
    colors = [(2 + j) % (K - 1) + 1 for j in range(link.ncomp)]
    with mpmath.workdps(40):
        a = jones_exact(link, colors, K).to_complex(40)
        b = exact_numeric(link, colors, K)
        assert abs(a - b) < mpmath.mpf(10) ** -30


def test_trefoil_color_two_is_jones_polynomial():
    # [2] V(q) with V(t) = -t^-4 + t^-3 + t^-1 and q = exp(2 pi i / K)
    for K in (5, 7, 11, 13):
        q = mpmath.exp(2j * mpmath.pi / K)
        want = 2 * mpmath.cos(mpmath.pi / K) * (-(q**-4) + q**-3 + q**-1)
        got = jones_exact(T(2, 3), [2], K).to_complex()
        assert abs(got - want) < 1e-12


@pytest.mark.parametrize("link", [U(2), H([1, -1]), H([0, 2, 1]), T(2, 3, 1), T(3, 4, 0), FramedLink.connected_sum([T(2, 3, 0), U(1)])])
def test_series_converges_to_exact(link):
    colors = [2] * link.ncomp
    errs = []
    for K in (101, 211):
        exact = exact_numeric(link, colors, K)
        approx = series_numeric(link, colors, K, 6)
        errs.append(abs(exact - approx) / abs(exact))
    # truncation error of order K^-7
    assert errs[1] < errs[0] * (101 / 211) ** 6


def test_mm_bounds_on_grid():
    for link in family_grid():
        s = jones_series(link, 8)
        assert check_mm_bound(s)[0], link
        assert check_asl_bound(s)[0] in (True, "not-applicable"), link


def test_fusion_rules():
    for K in (5, 7):
        for a1 in range(1, K):
            for a2 in range(1, K - a1 + 1):
                assert all(fusion_identities_check(a1, a2, K).values())


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(family_grid()))
def test_descriptor_round_trip(link):
    assert FramedLink.from_json(link.to_json()) == link
    assert FramedLink.from_json(str(link)) == link


def test_descriptor_errors():
    with pytest.raises(InputError):
        FramedLink.from_json('{"family":"unknot"}')
    with pytest.raises(InputError):
        FramedLink.from_json('{"family":"unknot","framing":1,"color":2}')
    with pytest.raises(InputError):
        FramedLink.from_json('{"family":"tangle"}')
    with pytest.raises(InputError):
        jones_exact(U(0), [7], 7)


def test_hopf_chain_single_is_unknot():
    assert jones_series(H([3]), 4).data == jones_series(U(3), 4).data


def test_linking_matrices():
    assert H([1, 2, 3]).linking == ((1, 1, 0), (1, 2, 1), (0, 1, 3))
    u = FramedLink.disjoint_union([U(2), H([0, 0])])
    assert u.ncomp == 3 and not u.is_split() and U(4).is_split()
