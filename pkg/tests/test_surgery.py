from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from pertinv.errors import InputError, MathAssertionError
from pertinv.jones import FramedLink
from pertinv.surgery import (
    alternating_sum,
    chain_fraction,
    compute_invariants,
    compute_invariants_asl,
    determinant,
    lens_key,
    load_registry,
    plan_pivots,
    required_input_order,
    signature,
)

U, H = FramedLink.unknot, FramedLink.hopf_chain
S3 = [0, Fraction(1, 6), 0, Fraction(-1, 180), 0, Fraction(1, 2835)]


def test_sphere_baselines():
    assert compute_invariants(FramedLink.empty(), 6).s == S3
    assert compute_invariants(U(1), 6).s == S3
    assert compute_invariants(U(-1), 6).s == S3


@pytest.mark.parametrize("p", [-7, -3, -2, 2, 3, 5, 9])
def test_unknot_closed_form(p):
    sg = 1 if p > 0 else -1
    s = compute_invariants(U(p), 3).s
    assert s[0] == Fraction(3 * sg, 2) - Fraction(p, 2) - Fraction(1, p)
    assert s[1] == Fraction(1, 6 * p * p)


@pytest.mark.parametrize("link", [U(3), U(-2), FramedLink.disjoint_union([U(2), U(-3)]), FramedLink.disjoint_union([U(2), U(3), U(-1)])])
def test_one_scoop_equals_stepwise(link):
    assert compute_invariants_asl(link, 3).s == compute_invariants(link, 3).s


def test_split_additivity():
    a, b = compute_invariants(U(2), 3).s, compute_invariants(U(3), 3).s
    ab = compute_invariants(FramedLink.disjoint_union([U(2), U(3)]), 3).s
    assert ab == [x + y - z for x, y, z in zip(a, b, S3)]


def test_pivot_order_does_not_matter():
    link = H([2, 3, 2])
    a = compute_invariants(link, 2)
    b = compute_invariants(link, 2, pivot_order=[2, 0, 1])
    assert a.s == b.s and a.h1order == 8


def test_registry_presentations_agree():
    for entry in load_registry():
        p, q = entry["presentations"]
        assert compute_invariants(p, 3).s == compute_invariants(q, 3).s, entry["name"]
        if p.family == "hopf_chain" or p.family == "unknot":
            assert lens_key(p.framings) == lens_key(q.framings), entry["name"]


def test_epsilon_mode_hopf():
    for p in (2, 3):
        link = H([0, p])
        a = compute_invariants(link, 2, epsilon=True)
        b = compute_invariants(link, 2, pivot_order=[1, 0])
        assert a.s == b.s == S3[:2]


def test_zero_pivot_without_regularization():
    with pytest.raises(MathAssertionError, match="zero pivot"):
        compute_invariants(H([0, 1]), 2, pivot_order=[0, 1])


def test_not_a_rational_homology_sphere():
    with pytest.raises(MathAssertionError, match="rational homology sphere"):
        compute_invariants(U(0), 2)


def test_alternating_sums_vanish_below_degree():
    link = FramedLink.disjoint_union([U(2), U(3), U(-2), U(5)])
    assert alternating_sum(link, 1).to_rational() == 0
    with pytest.raises(InputError):
        alternating_sum(H([1, 1]), 1)
    with pytest.raises(InputError):
        alternating_sum(FramedLink.disjoint_union([U(0), U(2)]), 1)


def test_required_input_order():
    assert required_input_order(2, 1) == 4
    assert required_input_order(1, 3) == 6
    assert required_input_order(5, 1, asl=True) == 4
    assert required_input_order(0, 5) == 5


def test_chain_fraction_and_lens_keys():
    assert chain_fraction([2, 2]) == Fraction(3, 2)
    assert lens_key([5]) == (5, 1)
    assert lens_key([2, 2]) == lens_key([-3])
    assert plan_pivots([[0, 1], [1, 2]]) == [1, 0]


sym = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.integers(-4, 4), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(lambda v, n=n: _sym(n, v))
)


def _sym(n, v):
    m = [[0] * n for _ in range(n)]
    it = iter(v)
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = next(it)
    return m


@settings(max_examples=80, deadline=None)
@given(sym)
def test_det_and_signature_against_eigenvalues(m):
    with mpmath.workdps(40):
        ev = mpmath.eigsy(mpmath.matrix(m))[0]
        vals = [ev[i] for i in range(len(m))]
        det = mpmath.fprod(vals)
    assert abs(int(determinant(m)) - det) < 1e-20
    tol = mpmath.mpf(10) ** -25
    assert signature(m) == sum(1 for x in vals if x > tol) - sum(1 for x in vals if x < -tol)


def test_signature_rejects_asymmetric():
    with pytest.raises(InputError):
        signature([[1, 2], [0, 1]])
