from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from wedgelab.exactla import RatMatrix
from wedgelab.liealg import (LieAlgebraError, NotInAlgebra, UnsupportedKind, ad, bracket, build_algebra,
                             diagonal_element, killing, root_datum, sigma, xi)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def test_dimensions():
    assert build_algebra("sl(2)").dim == 3
    assert build_algebra("sl(3)").dim == 8
    assert build_algebra("gl(2)").dim == 4
    assert build_algebra("so(1,3)").dim == 6
    assert build_algebra("sl2xi").dim == 4


def test_sigma_bracket_matches_oracle():
    A = build_algebra("sl(2)")
    s1, s2 = A.from_matrix(sigma(1)), A.from_matrix(sigma(2))
    assert bracket(s1, s2).matrix == RatMatrix.from_rows(oracles.BRACKET_S1_S2)
    assert np.allclose(oracles.np_commutator(oracles.SIGMA1, oracles.SIGMA2), oracles.as_float(oracles.SIGMA0))


def test_certificate_bracket():
    A = build_algebra("sl(3)")
    k2 = A.from_matrix(RatMatrix.from_rows(oracles.K2_SL3))
    d = A.from_matrix(RatMatrix.from_rows(oracles.DIFF_SL3))
    assert bracket(k2, d).matrix == RatMatrix.from_rows(oracles.BRACKET_SL3)


def test_xi_is_central():
    A = build_algebra("sl2xi")
    z = xi(A)
    assert all(bracket(z, y).is_zero() for y in A.basis_elements())
    assert killing(z, z) == 0
    assert A.center() and all(bracket(c, y).is_zero() for c in A.center() for y in A.basis_elements())


def test_ad_spectrum_of_sigma2():
    A = build_algebra("sl(2)")
    M = ad(A.from_matrix(sigma(2)))
    basis = [b.tolist() for b in A.basis]
    assert sorted(oracles.np_ad_spectrum(oracles.as_float(oracles.SIGMA2), [oracles.as_float(b) for b in basis])) == pytest.approx([-1, 0, 1])
    assert M @ M @ M == M


def test_ad_zero_and_killing():
    A = build_algebra("sl(2)")
    assert ad(A.zero()).is_zero()
    assert killing(A.from_matrix(sigma(2)), A.from_matrix(sigma(2))) == 2


def test_h1_eigenspace_dims_in_sl3():
    from wedgelab.exactla import eigenspace
    A = build_algebra("sl(3)")
    h1 = diagonal_element(A, [F(2, 3), F(-1, 3), F(-1, 3)])
    dims = tuple(len(eigenspace(ad(h1), nu)) for nu in (1, 0, -1))
    assert dims == (2, 4, 2)


def test_root_datum():
    assert len(root_datum(build_algebra("sl(2)")).roots) == 2
    R = root_datum(build_algebra("sl(3)"))
    assert len(R.roots) == 6
    A = R.algebra
    h = A.from_matrix(RatMatrix.from_rows(oracles.H_SL3))
    e12 = R.root_vectors[(0, 1)]
    assert bracket(h, e12) == -e12
    assert R.root_value((0, 1), h) == -1


def test_errors():
    with pytest.raises(UnsupportedKind):
        build_algebra("e8")
    A = build_algebra("sl(2)")
    with pytest.raises(NotInAlgebra):
        A.from_matrix(RatMatrix.identity(2))
    from wedgelab.liealg import LieAlgebra
    with pytest.raises(LieAlgebraError):
        LieAlgebra("dep", [sigma(1), sigma(1)])
    with pytest.raises(LieAlgebraError):
        bracket(A.zero(), build_algebra("sl(3)").zero())


def elements(name):
    A = build_algebra(name)
    return st.lists(rationals, min_size=A.dim, max_size=A.dim).map(A.element)


@settings(max_examples=40, deadline=None)
@given(elements("sl(3)"), elements("sl(3)"), elements("sl(3)"))
def test_jacobi_antisymmetry_killing_symmetry(x, y, z):
    assert bracket(x, x).is_zero()
    assert bracket(x, y) == -bracket(y, x)
    jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert jac.is_zero()
    assert killing(x, y) == killing(y, x)


@settings(max_examples=40, deadline=None)
@given(elements("so(1,2)"), elements("so(1,2)"))
def test_ad_is_a_representation(x, y):
    assert ad(bracket(x, y)) == ad(x) @ ad(y) - ad(y) @ ad(x)


@settings(max_examples=30, deadline=None)
@given(elements("gl(2)"))
def test_coordinates_roundtrip(x):
    A = x.algebra
    assert A.from_matrix(x.matrix) == x
