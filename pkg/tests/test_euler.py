from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from wedgelab.euler import (NotEuler, UnknownRootSystem, catalog_crosscheck, check_euler, euler_catalog,
                            euler_involution, hj_element, is_euler, is_symmetric, sl_class_index)
from wedgelab.exactla import RatMatrix
from wedgelab.liealg import LieAlgebra, ad, build_algebra, diagonal_element, sigma, xi


def sigma_basis_sl2():
    return LieAlgebra("sl2", [sigma(2), RatMatrix.unit(2, 0, 1), RatMatrix.unit(2, 1, 0)], kind="sl",
                      params={"n": 2})


def test_sigma2_is_euler_with_dims_111():
    A = build_algebra("sl(2)")
    e = check_euler(A.from_matrix(sigma(2)))
    assert e.grading_dims == (1, 1, 1)


def test_sigma0_is_not_euler():
    A = build_algebra("sl(2)")
    with pytest.raises(NotEuler):
        check_euler(A.from_matrix(sigma(0)))
    with pytest.raises(NotEuler) as info:
        check_euler(A.zero())
    assert info.value.witness is None


def test_sl3_example_is_euler():
    A = build_algebra("sl(3)")
    assert is_euler(A.from_matrix(RatMatrix.from_rows(oracles.H_SL3)))


def test_involution_in_sigma_basis():
    A = sigma_basis_sl2()
    e = check_euler(A.basis_element(0))
    s = euler_involution(e)
    assert s == RatMatrix.diag([1, -1, -1])
    assert s @ s == RatMatrix.identity(3)
    assert s.apply(e.element.coords) == e.element.coords


def test_symmetry_examples():
    assert is_symmetric(hj_element(4, 2))
    assert not is_symmetric(hj_element(3, 1))
    A = build_algebra("sl2xi")
    h1 = A.from_matrix(RatMatrix.diag([F(1, 2), F(-1, 2), 0]))
    h2 = xi(A) - h1
    assert is_euler(h2) and not is_symmetric(h2)
    assert is_symmetric(build_algebra("so(1,2)").basis_element(0))


def test_hj_formula():
    assert hj_element(3, 1).matrix == RatMatrix.diag([F(2, 3), F(-1, 3), F(-1, 3)])
    assert hj_element(2, 1).matrix == RatMatrix.diag([F(1, 2), F(-1, 2)])
    assert hj_element(4, 2).matrix == RatMatrix.diag([F(1, 2), F(1, 2), F(-1, 2), F(-1, 2)])
    with pytest.raises(ValueError):
        hj_element(3, 3)


def test_catalog_entries():
    a3 = euler_catalog("A3")
    assert a3.euler_indices == (1, 2, 3) and a3.symmetric_indices == (2,)
    assert euler_catalog("G2").euler_indices == ()
    e7 = euler_catalog("E₇")
    assert e7.euler_indices == (7,) and e7.symmetric_indices == (7,)
    with pytest.raises(UnknownRootSystem):
        euler_catalog("Q5")


@pytest.mark.parametrize("n", range(2, 7))
def test_sl_catalog_agrees(n):
    for j in range(1, n):
        e = check_euler(hj_element(n, j))
        assert is_symmetric(e) == (n == 2 * j)
        cc = catalog_crosscheck(e)
        assert cc["agree"] and cc["class_index"] == j


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))),
       st.permutations(range(5)))
def test_permuted_hj_keeps_class_and_grading(nj, perm):
    n, j = nj
    perm = [p for p in perm if p < n]
    h = hj_element(n, j)
    vals = [h.matrix[p, p] for p in perm]
    x = diagonal_element(h.algebra, vals)
    e = check_euler(x)
    assert sl_class_index(x) == j
    d1, d0, dm1 = e.grading_dims
    assert d1 == dm1 == j * (n - j) and d1 + d0 + dm1 == n * n - 1
    M = ad(x)
    assert M @ M @ M == M


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_euler_iff_differences_in_range(vals):
    # sl3 diagonal elements: Euler iff all a_i - a_j lie in {-1, 0, 1}, not all zero
    m = F(sum(vals), 3)
    A = build_algebra("sl(3)")
    x = diagonal_element(A, [v - m for v in vals])
    diffs = {a - b for a in vals for b in vals}
    assert is_euler(x) == (diffs <= {-1, 0, 1} and diffs != {0})
