import random

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from termgen import random_term
from wedgelab import dsmink
from wedgelab.modcov import get_setup, negcond_certificate
from wedgelab.netcalc import (CONTEXTS, RULE_TAGS, Base, Complement, CosetNet, DirectSum, NormalizationError,
                              Twist, UnknownSymbol, Wedge, check_duality, coset_equal, covariance_closure,
                              duality_identity, make_context, mink_noncov_chain, normalize, parse_identity,
                              parse_term, print_term, verify_identity)
from wedgelab.netcalc.terms import TermSyntaxError, term_size
from wedgelab.netcalc.cosets import setup_coset_net
from wedgelab.netcalc.rules import ROTATION_ORBIT

NETS = ["N", "K", "Htilde"]


@pytest.fixture
def ds2():
    return make_context("ds2-twisted")


# -- parser and printer ------------------------------------------------------------

def test_parse_twisted_complement_of_sum():
    t = parse_term("Z·(N(W1) (+) K(W1))'")
    assert t == Twist(Complement(DirectSum(Base("N", Wedge("W1")), Base("K", Wedge("W1")))))


def test_identity_round_trip():
    text = "Htilde(W') = Z·Htilde(W)'"
    lhs, rhs = parse_identity(text)
    assert f"{print_term(lhs)} = {print_term(rhs)}" == text


@pytest.mark.parametrize("text", [
    "N(W)", "N(W')", "U(g.h)·N(W1)", "Z·N(W)'", "N(W) (+) K(W)'", "N(W) (x) K(W) (+) N(W2)", "N(W) (x) (K(W) (+) N(W2))",
    "U(r(pi/2))·(N(W) (+) K(W))'",
])
def test_print_parse_fixed_points(text):
    assert print_term(parse_term(text)) == text


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_print_parse_round_trip_random(seed):
    t = random_term(random.Random(seed), NETS, 20)
    assert parse_term(print_term(t)) == t


def test_ascii_star_accepted():
    assert parse_term("Z*Htilde(W)'") == parse_term("Z·Htilde(W)'")
    assert parse_term("U(g)*N(W)") == parse_term("U(g)·N(W)")


def test_unbalanced_paren_reports_position():
    with pytest.raises(TermSyntaxError) as info:
        parse_term("N(W")
    assert info.value.position == 3


@pytest.mark.parametrize("text", ["", "N(W) (+)", "Z·", "N(W))", "U()·N(W)"])
def test_malformed_terms_rejected(text):
    with pytest.raises(TermSyntaxError):
        parse_term(text)


# -- rewriting ----------------------------------------------------------------------

def test_rotation_by_pi_primes_the_wedge(ds2):
    nf, steps = normalize(parse_term("U(r(pi))·N(W)"), ds2)
    assert print_term(nf) == "N(W')"
    assert [s.tag for s in steps] == ["covariance"]


def test_full_turn_is_central(ds2):
    nf, steps = normalize(parse_term("U(r(2pi))·N(W)'"), ds2)
    assert print_term(nf) == "N(W)'"
    assert {s.tag for s in steps} == {"central-fix"}


def test_twist_swaps_summands(ds2):
    nf, steps = normalize(parse_term("Z·(N(W) (+) K(W))"), ds2)
    assert "twist-swap" in {s.tag for s in steps}
    assert print_term(nf) == "N(W')' (+) N(W)"


def test_all_tags_are_known(ds2):
    rnd = random.Random(1)
    for _ in range(200):
        _, steps = normalize(random_term(rnd, NETS, 15), ds2)
        assert {s.tag for s in steps} <= set(RULE_TAGS)


def test_step_budget_enforced(ds2):
    with pytest.raises(NormalizationError):
        normalize(parse_term("Z·(Htilde(W) (+) Htilde(W2))'"), ds2, max_steps=1)


def test_unknown_net_and_symbol(ds2):
    with pytest.raises(UnknownSymbol):
        normalize(parse_term("M(W)"), ds2)
    with pytest.raises(UnknownSymbol):
        normalize(parse_term("N(q.W)"), ds2)
    with pytest.raises(UnknownSymbol):
        make_context("nope")


def test_termination_on_random_terms(ds2):
    rnd = random.Random(20240)
    worst = 0
    for _ in range(10_000):
        t = random_term(rnd, NETS, 30)
        assert term_size(t) <= 30
        _, steps = normalize(t, ds2, max_steps=1000)
        worst = max(worst, len(steps))
    assert worst < 1000


def test_normal_form_is_idempotent(ds2):
    rnd = random.Random(7)
    for _ in range(300):
        nf, _ = normalize(random_term(rnd, NETS, 20), ds2)
        again, steps = normalize(nf, ds2)
        assert again == nf and steps == []


# -- identities -----------------------------------------------------------------------

def test_twisted_duality_proved(ds2):
    lhs, rhs = parse_identity("Htilde(W') = Z·Htilde(W)'")
    res = verify_identity(lhs, rhs, ds2)
    assert res.proved
    assert len(res.transcript) >= 5
    assert {"eq-prime", "central-fix"} <= res.tags
    out = res.to_json()
    assert out["proved"] and "counterexample" not in out
    assert all(s["justification"] for s in out["lhs_transcript"] + out["rhs_transcript"])


def test_twisted_duality_is_covariant(ds2):
    lhs, rhs = parse_identity("Htilde(W') = Z·Htilde(W)'")
    words = [(s,) for s in ROTATION_ORBIT] + [("g",), ("h", "r(pi/2)"), ("b(1/2)",)]
    assert all(r.proved for r in covariance_closure(lhs, rhs, ds2, words))


def test_untwisted_duality_counterexample(ds2):
    lhs, rhs = parse_identity("Htilde(W') = Htilde(W)'")
    res = verify_identity(lhs, rhs, ds2)
    assert not res.proved
    ce = res.to_json()["counterexample"]
    assert ce["lhs"] != ce["rhs"]


@pytest.mark.parametrize("context,twist,dual", [
    ("ds2-twisted", True, True), ("ds2-twisted", False, False),
    ("bgl", False, True), ("bgl", True, False),
    ("dual", False, True), ("dual", True, False),
])
def test_check_duality(context, twist, dual):
    report = check_duality(context, twist)
    assert report["dual"] is dual
    assert len(report["wedges"]) == len(ROTATION_ORBIT)


def test_default_twist_follows_context():
    for name in CONTEXTS:
        assert check_duality(name)["dual"]


def test_duality_identity_shape(ds2):
    lhs, rhs = duality_identity(ds2, Wedge("W"), twist=True)
    assert print_term(lhs) == "Htilde(W')" and print_term(rhs) == "Z·Htilde(W)'"


# -- cosets ---------------------------------------------------------------------------

def test_coset_minus_one(ds2):
    net = ds2.coset_net("W")
    g = ds2.matrix("g")
    assert coset_equal(net, g @ -np.eye(2), g)


def test_coset_stabilizer_boost(ds2):
    net = ds2.coset_net("W")
    g = ds2.matrix("g")
    assert coset_equal(net, g @ scipy.linalg.expm(0.7 * dsmink.SIGMA1), g)
    assert not coset_equal(net, g @ scipy.linalg.expm(0.7 * dsmink.SIGMA2), g)


@pytest.mark.parametrize("sym", ["-1", "e", "r(2pi)", "r(-2pi)", "r(4pi)", "b(0)"])
def test_central_fix_is_sound(ds2, sym):
    for base in ("W", "W2"):
        assert coset_equal(ds2.coset_net(base), ds2.matrix(sym), np.eye(2))


def test_sl3_exp_k2_changes_coset():
    setup = get_setup("sl3")
    net = setup_coset_net(setup)
    g = scipy.linalg.expm(0.5 * setup.hsub[0].matrix.to_float())
    k2 = setup.hsub[1].matrix.to_float()
    assert coset_equal(net, g, g)
    assert not coset_equal(net, g @ scipy.linalg.expm(k2), g)


def test_bad_stabilizer_rejected():
    with pytest.raises(ValueError):
        CosetNet("SL2(R)", "W", dsmink.SIGMA1, algebra_basis=(dsmink.SIGMA2,))
    with pytest.raises(ValueError):
        CosetNet("SL2(R)", "W", dsmink.SIGMA1, discrete_generators=(dsmink.r(np.pi / 2),))


# -- Minkowski chain --------------------------------------------------------------------

@pytest.mark.parametrize("name", ["sl3", "gl2", "sl2xi", "dual"])
def test_chain_not_equal_for_violated(name):
    setup = get_setup(name)
    cert = negcond_certificate(setup)
    report = mink_noncov_chain(cert, setup, t=1.0)
    assert report.verdict == "NotEqual"
    assert report.defect > 1e-6
    assert report.lines[-1]["line"].startswith("!=")
    assert {l["tag"] for l in report.lines} <= set(RULE_TAGS)


@pytest.mark.parametrize("s", [0.01, -0.3, 1.0, -1.0])
def test_chain_stable_in_s(s):
    setup = get_setup("sl3")
    cert = negcond_certificate(setup)
    assert mink_noncov_chain(cert, setup, t=0.25, s=s).verdict == "NotEqual"
    assert mink_noncov_chain(cert, setup, t=0.0, s=s).verdict == "Equal"


@pytest.mark.parametrize("t", [0.0, 0.3, 1.0, -2.0])
def test_chain_equal_for_bisognano_wichmann(t):
    setup = get_setup("bw")
    cert = negcond_certificate(setup)
    report = mink_noncov_chain(cert, setup, t=t)
    assert report.verdict == "Equal"
    assert report.certificate is None
