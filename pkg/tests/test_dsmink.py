import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from wedgelab import dsmink
from wedgelab.dsmink import (DeSitterPoint, DSWedge, MinkWedge, NonzeroTrace, NotOnDeSitter, NotUnimodular,
                             PoincareElement, base_wedge, boost, ds_wedge_of, embed_ds, forward_cone_contains,
                             lambda_cover, mink_wedge_of, minkowski, project, r, rotation_matrix,
                             stabilizer_sample, tilde, untilde, wedge_contains)

angles = st.floats(-np.pi, np.pi)
small = st.floats(-1.5, 1.5)


@st.composite
def sl2(draw):
    # Iwasawa form r(theta) a(s) n(u)
    theta, s, u = draw(angles), draw(small), draw(small)
    return r(theta) @ np.diag([np.exp(s), np.exp(-s)]) @ np.array([[1.0, u], [0.0, 1.0]])


@st.composite
def ds_points(draw):
    x0 = draw(st.floats(-3, 3))
    phi = draw(angles)
    rad = np.sqrt(1 + x0 * x0)
    return np.array([x0, rad * np.cos(phi), rad * np.sin(phi)])


def test_tilde_examples():
    assert np.allclose(tilde([0, 1, 0]), oracles.as_float(oracles.SIGMA2))
    assert np.allclose(tilde([1, 0, 0]), oracles.as_float(oracles.SIGMA0))
    assert np.allclose(tilde([0, 0, 1]), -oracles.as_float(oracles.SIGMA1))


def test_untilde_examples():
    assert np.allclose(untilde(oracles.as_float(oracles.SIGMA2)), [0, 1, 0])
    assert np.allclose(untilde(oracles.as_float(oracles.SIGMA0)), [1, 0, 0])
    with pytest.raises(NonzeroTrace):
        untilde(np.eye(2))


def test_desitter_point_validation():
    p = DeSitterPoint.of([0, 1, 0])
    assert np.isclose(np.trace(p.matrix), 0) and np.isclose(np.linalg.det(p.matrix), -0.25)
    with pytest.raises(NotOnDeSitter):
        DeSitterPoint.of([1, 1, 0])


def test_cover_examples():
    assert np.abs(lambda_cover(r(np.pi)) - np.diag([1.0, -1.0, -1.0])).max() < 1e-12
    assert np.allclose(lambda_cover(-np.eye(2)), np.eye(3))
    t = 0.7
    L = lambda_cover(boost(1, t))
    want = np.array([[np.cosh(t), np.sinh(t), 0], [np.sinh(t), np.cosh(t), 0], [0, 0, 1]])
    assert np.allclose(L, want, atol=1e-12)
    with pytest.raises(NotUnimodular):
        lambda_cover(2 * np.eye(2))


@pytest.mark.parametrize("k", range(4))
def test_rotation_lift(k):
    theta = k * np.pi / 2
    assert np.abs(lambda_cover(r(theta)) - rotation_matrix(theta)).max() < 1e-12


def test_containment_examples():
    W = base_wedge()
    assert wedge_contains(W, DeSitterPoint.of([0, 1, 0]))
    assert not wedge_contains(W, DeSitterPoint.of([0, -1, 0]))
    assert wedge_contains(ds_wedge_of(r(np.pi)), DeSitterPoint.of([0, -1, 0]))


def test_ds_wedge_of_examples():
    assert ds_wedge_of(np.eye(2)) == base_wedge()
    assert ds_wedge_of(-np.eye(2)) == base_wedge()
    R = r(np.pi / 2)
    k1 = oracles.as_float(oracles.K1_SL3)[:2, :2]
    k2 = oracles.as_float(oracles.K2_SL3)[:2, :2]
    assert np.abs(k1 - R @ k2 @ np.linalg.inv(R)).max() < 1e-12
    assert ds_wedge_of(R) == base_wedge("x2")
    # the rotation by pi maps the base wedge to its dual
    assert ds_wedge_of(r(np.pi)) == base_wedge().dual()


def test_mink_examples():
    W = ds_wedge_of(r(0.4))
    assert project(embed_ds(W)) == W
    M = embed_ds(W).act(PoincareElement.translation([0.3, -1.0, 2.0]))
    assert M.project() == W
    a, b = np.array([1.0, 2, 3]), np.array([-1.0, 0.5, 0])
    ab = PoincareElement.translation(a) @ PoincareElement.translation(b)
    assert ab.equals(PoincareElement.translation(a + b))
    # translation along the edge does not move the base wedge
    assert mink_wedge_of([0, 0, 5.0], np.eye(2)) == embed_ds(base_wedge())
    assert mink_wedge_of([0, 1.0, 0], np.eye(2)) != embed_ds(base_wedge())


def test_forward_cone():
    assert forward_cone_contains([1, 0, 0])
    assert forward_cone_contains([1, 1, 0])
    assert not forward_cone_contains([0, 1, 0])


def test_bad_euler_matrix():
    with pytest.raises(ValueError):
        DSWedge(np.eye(2))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-50, 50), min_size=3, max_size=3))
def test_form_is_four_det(x):
    x = np.array(x)
    assert abs(minkowski(x, x) - 4 * np.linalg.det(tilde(x))) < 1e-10 * max(1.0, x @ x)
    assert np.allclose(untilde(tilde(x)), x, atol=1e-12 * max(1.0, np.abs(x).max()))


@settings(max_examples=200, deadline=None)
@given(sl2(), sl2())
def test_cover_is_a_lorentz_homomorphism(g, h):
    L = lambda_cover(g)
    assert np.linalg.norm(lambda_cover(g @ h) - L @ lambda_cover(h), "fro") < 1e-9 * max(1, np.abs(L).max() ** 2)
    assert np.allclose(L.T @ dsmink.ETA @ L, dsmink.ETA, atol=1e-9 * np.abs(L).max() ** 2)
    assert L[0, 0] >= 1 - 1e-12


@settings(max_examples=200, deadline=None)
@given(sl2(), sl2(), ds_points())
def test_containment_is_covariant(g, h, p):
    W = ds_wedge_of(h)
    q = lambda_cover(h) @ np.array([0.0, 1.0, 0.0])
    assert W.contains(q)
    # skip points too close to the wedge boundary for a stable verdict
    c = lambda_cover(np.linalg.inv(W.carrier())) @ p
    if abs(abs(c[0]) - c[1]) < 1e-6:
        return
    assert W.transform(g).contains(lambda_cover(g) @ p) == W.contains(p)


@settings(max_examples=100, deadline=None)
@given(sl2(), small, st.sampled_from([1, -1]))
def test_stabilizer_leaves_wedge_fixed(g, t, sign):
    W = base_wedge()
    s = stabilizer_sample(W, t, sign)
    assert ds_wedge_of(g @ s) == ds_wedge_of(g)


@settings(max_examples=100, deadline=None)
@given(sl2(), st.lists(st.floats(-3, 3), min_size=3, max_size=3), st.lists(st.floats(-3, 3), min_size=3, max_size=3))
def test_poincare_group_law(g, a, b):
    p = PoincareElement(a, g)
    q = PoincareElement(b, np.eye(2))
    assert (p @ p.inverse()).equals(PoincareElement.translation([0, 0, 0]), tol=1e-9)
    x = np.array([0.2, 0.1, -0.4])
    assert np.allclose((p @ q).apply(x), p.apply(q.apply(x)), atol=1e-9)
    M = mink_wedge_of(a, g)
    assert isinstance(M, MinkWedge) and M.contains(p.apply([0.0, 1.0, 0.0]))
