from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pertinv.errors import InputError
from pertinv.jones import FramedLink, jones_series
from pertinv.orbit import (
    InvariantPolynomial as IP,
    TreeMonomial,
    build_L2,
    build_L3_milnor,
    canonical_P,
    kirillov_check,
    orbit_integral,
    single_component_collapse,
    sphere_moment,
)
from pertinv.scalars import SymbolicScalar


def rat(d):
    return {k: v.to_rational() for k, v in d.items()}


@pytest.mark.parametrize("k", [1, 2, 3])
def test_dot_power_moment(k):
    # <(a.b)^{2k}> over two spheres = |a|^{2k}|b|^{2k}/(2k+1)
    p = IP.constant(1)
    for _ in range(2 * k):
        p = p * IP.dot(1, 2)
    assert rat(sphere_moment(p, 2)) == {(k, k): Fraction(1, 2 * k + 1)}


def test_odd_moments_vanish():
    assert sphere_moment(IP.dot(1, 2), 2) == {}
    assert sphere_moment(IP.triple(1, 2, 3), 3) == {}


def test_triple_product_square():
    # E[(a . b x c)^2] = (1 - E[(b.c)^2]) / 3 = 2/9 for unit vectors
    t = IP.triple(1, 2, 3)
    assert rat(sphere_moment(t * t, 3)) == {(1, 1, 1): Fraction(2, 9)}


def test_diagonal_dot_is_constant_on_orbits():
    assert rat(sphere_moment(IP.dot(1, 1, 3), 1)) == {(1,): 3}


def test_antisymmetry():
    assert IP.triple(1, 2, 3) == IP.triple(2, 3, 1)
    assert IP.triple(1, 2, 3) == IP.triple(2, 1, 3).scale(-1)
    assert IP.triple(1, 1, 2).is_identically_zero()


def test_trees_reduce_to_basic_contractions():
    assert IP.tree(TreeMonomial.star([1, 2, 3])).coordinates(3) == IP.triple(1, 2, 3).coordinates(3)
    assert IP.tree(TreeMonomial.star([1, 2, 3, 4])).coordinates(4) == IP.crossdot(1, 2, 3, 4).coordinates(4)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_single_component_tree_collapse(m):
    assert single_component_collapse(TreeMonomial.star([1] * m))


@pytest.mark.parametrize("alpha", [1, 2, 3, 5])
def test_kirillov(alpha):
    assert kirillov_check(alpha, 6) == (True, None)
    assert kirillov_check(alpha, 4, direction=(1, 2, 2))[0]


def test_hopf_reconstruction():
    o = orbit_integral([(2, build_L2([[0, 1], [1, 0]]))], canonical_P(4), 2, 4)
    assert o.data == jones_series(FramedLink.hopf_chain([0, 0]), 4).data


def test_diagonal_term_becomes_framing():
    # dot(1,1) is constant on the orbit, so it only moves into the framing
    o = orbit_integral([(2, build_L2([[3]]))], canonical_P(4), 1, 4)
    j = jones_series(FramedLink.unknot(0), 4).data
    assert o.data == {k: v for k, v in j.items() if k[1] == (0,)}
    assert o.linking == ((3,),)


labels = st.integers(1, 3)
polys = st.lists(
    st.tuples(st.sampled_from(["dot", "triple"]), labels, labels, labels, st.integers(-3, 3)), min_size=1, max_size=3
).map(lambda ts: sum((IP.dot(i, j, c) if f == "dot" else IP.triple(i, j, k, c) for f, i, j, k, c in ts), IP()))


@settings(max_examples=40, deadline=None)
@given(polys)
def test_json_round_trip(p):
    assert IP.from_json(p.to_json()) == p


@settings(max_examples=30, deadline=None)
@given(polys, polys)
def test_moment_is_linear(p, q):
    a, b, c = sphere_moment(p, 3), sphere_moment(q, 3), sphere_moment(p + q, 3)
    keys = set(a) | set(b) | set(c)
    z = SymbolicScalar()
    assert all(a.get(k, z) + b.get(k, z) == c.get(k, z) for k in keys)


def test_milnor_triple_has_no_linear_moment():
    L3 = build_L3_milnor({(1, 2, 3): 1})
    assert L3.labels() == {1, 2, 3} and sphere_moment(L3, 3) == {}


def test_bad_inputs():
    with pytest.raises(InputError):
        TreeMonomial(2, ((0, 1),), ((0, 1), (0, 2), (1, 3)))
    with pytest.raises(InputError):
        TreeMonomial.star([1, 2])
    with pytest.raises(InputError):
        IP.from_json({"terms": [{"coef": "1", "factors": [["wedge", 1, 2]]}]})
    with pytest.raises(InputError):
        kirillov_check(1, 2, direction=(0, 0, 0))
