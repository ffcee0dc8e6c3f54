import dataclasses
import json
from fractions import Fraction as F

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from wedgelab.euler import hj_element
from wedgelab.exactla import RatMatrix
from wedgelab.gl2embed import SymmetricInput
from wedgelab.liealg import build_algebra, diagonal_element, sigma, xi
from wedgelab.modcov import (HOLDS, VIOLATED, EmbeddingInvalid, InvalidSetup, CertificateNotViolated,
                             bw_setup, catalog_setups, certificate_summary, dual_setup, get_setup,
                             gl2_setup_from, group_stabilizer_test, higher_dim_report,
                             higher_dim_stabilizer_check, make_setup, neccond, neccond_exact,
                             negcond_certificate, reverify, sl3_so12_embedding, sl_setup, sl2xi_setup)


def test_neccond_verdicts():
    assert neccond(bw_setup())
    assert not neccond(sl_setup())
    assert not neccond(sl2xi_setup())


def test_sl3_certificate_matches_oracle():
    S = sl_setup()
    assert S.difference.matrix == RatMatrix.from_rows(oracles.DIFF_SL3)
    c = negcond_certificate(S)
    assert c.status == VIOLATED
    assert c.witness_label == "k2"
    assert c.witness_y.matrix == RatMatrix.from_rows(oracles.K2_SL3)
    assert c.bracket_value.matrix == RatMatrix.from_rows(oracles.BRACKET_SL3)
    assert c.obstruction.matrix == RatMatrix.from_rows(oracles.OBSTRUCTION_SL3)
    assert reverify(S, c)
    # float route for the same chain
    b = oracles.np_commutator(oracles.as_float(oracles.K2_SL3), oracles.as_float(oracles.DIFF_SL3))
    o = oracles.np_commutator(oracles.as_float(oracles.H_SL3), b)
    assert np.allclose(o, oracles.as_float(oracles.OBSTRUCTION_SL3))
    json.dumps(c.to_json())
    assert "k2" in certificate_summary(c)


def test_reverify_detects_tampering():
    S = sl_setup()
    c = negcond_certificate(S)
    forged = dataclasses.replace(c, obstruction=c.obstruction.scale(2))
    assert not reverify(S, forged)
    with pytest.raises(CertificateNotViolated):
        reverify(bw_setup(), negcond_certificate(bw_setup()))


def test_dual_and_bw_controls():
    assert negcond_certificate(dual_setup()).status == VIOLATED
    c = negcond_certificate(bw_setup())
    assert c.status == HOLDS and c.witness_y is None
    assert all(s["defect"] == 0.0 for s in c.group_samples)


def test_group_test_examples():
    S = sl_setup()
    assert group_stabilizer_test(S, np.eye(3), 0.7)["defect"] < 1e-12
    g = scipy.linalg.expm(0.5 * oracles.as_float(oracles.K2_SL3))
    rep = group_stabilizer_test(S, g, 1.0)
    assert rep["defect"] > 0.1
    assert rep["defect"] == pytest.approx(oracles.GROUP_DEFECT_SL3, rel=1e-9)
    assert group_stabilizer_test(S, g, 0)["defect"] == 0.0


def test_catalog():
    cat = catalog_setups()
    assert len(cat) == 4
    assert all(not neccond_exact(s) for s in cat)
    sl2xi = cat[2]
    A = sl2xi.algebra
    assert (sl2xi.h2.element - sl2xi.h1) == xi(A) - sl2xi.h1.scale(2)
    sl3 = cat[0]
    assert sl3.h1.matrix == RatMatrix.from_rows(oracles.K1_SL3)


def test_symmetric_elements_refused():
    with pytest.raises(SymmetricInput):
        gl2_setup_from(hj_element(4, 2), "sym")
    with pytest.raises(SymmetricInput):
        gl2_setup_from(hj_element(2, 1), "sym")


def test_invalid_setups():
    A = build_algebra("sl(2)")
    h = A.from_matrix(sigma(2))
    other = A.from_matrix(sigma(1))
    with pytest.raises(InvalidSetup):
        make_setup("noncommuting", A, A.basis_elements(), other, h)
    with pytest.raises(InvalidSetup):
        make_setup("notclosed", A, [A.basis_element(0), A.basis_element(1)], h, h)
    with pytest.raises(KeyError):
        get_setup("nope")


def test_higher_dim_examples():
    A = build_algebra("sl(3)")
    images = sl3_so12_embedding()
    h = A.from_matrix(RatMatrix.from_rows(oracles.H_SL3))
    assert higher_dim_stabilizer_check(images, A, h)
    # commutes with every image: the bracket condition fails
    rep = higher_dim_report(images, A, diagonal_element(A, [1, 1, -2]))
    assert not rep and not rep.bracket_nonzero
    # conjugate of h1 mixing the third coordinate: brackets leave so(1,2)
    g = RatMatrix.identity(3) + RatMatrix.unit(3, 0, 2)
    from wedgelab.exactla import rat_inverse
    h_mixed = A.from_matrix(g @ hj_element(3, 1).matrix @ rat_inverse(g))
    rep = higher_dim_report(images, A, h_mixed)
    assert not rep and not rep.bracket_inside
    with pytest.raises(EmbeddingInvalid):
        higher_dim_report([images[0], images[1], images[1]], A, h)
    with pytest.raises(EmbeddingInvalid):
        higher_dim_report([images[0], images[2], images[1]], A, h)


def _nonsymmetric():
    return st.sampled_from([(n, j) for n in range(3, 6) for j in range(1, n) if n != 2 * j])


@settings(max_examples=20, deadline=None)
@given(_nonsymmetric(), st.randoms(use_true_random=False))
def test_every_nonsymmetric_sl_element_is_violated(nj, rnd):
    n, j = nj
    h = hj_element(n, j)
    vals = list(h.matrix.diagonal())
    rnd.shuffle(vals)
    S = sl_setup(n, diagonal_element(h.algebra, vals))
    c = negcond_certificate(S)
    assert c.status == VIOLATED and reverify(S, c)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["bw"]), st.floats(-2, 2), st.floats(-1, 1))
def test_holds_implies_zero_group_defects(name, t, s):
    S = get_setup(name)
    assert neccond(S)
    for y in S.hsub:
        g = scipy.linalg.expm(s * y.matrix.to_float())
        assert group_stabilizer_test(S, g, t)["defect"] < 1e-9
