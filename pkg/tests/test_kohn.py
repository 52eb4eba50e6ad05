from fractions import Fraction

import pytest

from kohncert.config import RunConfig
from kohncert.errors import InfiniteTypeError, InvariantViolationError
from kohncert.germs import Germ
from kohncert.invariants import GermSet
from kohncert.kohn import (
    SpecialDomain,
    catlin_dangelo_domain,
    classic_kohn,
    compare_modes,
    heier_domain,
    run,
    step1,
    step2,
    step3,
)
from kohncert.parse import parse_poly as P
from kohncert.parse import render_poly as R

CFG = RunConfig()


# -- step 1 ---------------------------------------------------------------------


def test_step1_heier():
    dom = heier_domain(7)
    s1 = step1(dom.premultipliers, 3, CFG)
    assert s1.f1.poly == P("3*z^2 + w^7")
    assert s1.d_value == 2
    assert s1.mu == 0 and s1.nu_phi == 3


def test_step1_cd():
    dom = catlin_dangelo_domain(2, 3, 10)
    s1 = step1(dom.premultipliers, 3, CFG)
    assert s1.f1.poly == P("6*z*w^2 + 2*z^11")
    assert s1.d_value == 3
    assert s1.mu == 1  # k* = 2, nu^2_gamma(z^2) = 0


def test_step1_square_pair():
    dom = SpecialDomain(GermSet.of([Germ(P("z^2"), "F1"), Germ(P("w^2"), "F2")]))
    s1 = step1(dom.premultipliers, 2, CFG)
    assert s1.f1.poly == P("4*z*w")
    assert s1.d_value == 2  # <= m(T-1) = 2


def test_step1_infinite_type_witness():
    dom = SpecialDomain(GermSet.of([Germ(P("z^2"), "F1"), Germ(P("z^2*w"), "F2")]))
    with pytest.raises(InfiniteTypeError):
        step1(dom.premultipliers, 4, CFG)


# -- steps 2/3 --------------------------------------------------------------------


def test_step2_step3_cd_values():
    dom = catlin_dangelo_domain(2, 3, 10)
    s1 = step1(dom.premultipliers, 3, CFG)
    s2 = step2(s1.f1, dom.premultipliers, 3, CFG)
    assert s2.d == 3
    orders = sorted(bl.terminal_order for bl in s2.branch_logs)
    assert orders == ["3", "4"]  # N(M-1) = 3 and M(N-1) = 4
    s3 = step3(s1.f1, s2.Ftilde, 3, CFG)
    assert (s3.d, s3.t, s3.a) == (3, Fraction(4), 12)


def test_step3_membership_verification():
    cfg = RunConfig(verify_membership=True)
    dom = catlin_dangelo_domain(2, 3, 10)
    s1 = step1(dom.premultipliers, 3, cfg)
    s2 = step2(s1.f1, dom.premultipliers, 3, cfg)
    s3 = step3(s1.f1, s2.Ftilde, 3, cfg)
    assert s3.membership_checked


# -- full runs ---------------------------------------------------------------------


def test_run_cd_certificate():
    cert = run(catlin_dangelo_domain(2, 3, 10), CFG)
    assert cert.mode == "standard"
    assert (cert.T, cert.m, cert.d, cert.t, cert.a) == (3, 2, 3, Fraction(4), 12)
    assert cert.l <= 10
    assert cert.epsilon_lower == Fraction(1, 2 ** (cert.l - 1) * 12)
    assert cert.chain[-1].poly == P("1")
    assert cert.chain[-3].label == "z" and cert.chain[-2].label == "w"
    assert not cert.failed_checks()


def test_run_heier_shortcut_k_independent():
    results = {K: run(heier_domain(K), CFG) for K in (3, 5, 7, 9)}
    a_vals = {c.a for c in results.values()}
    eps_vals = {c.epsilon_lower for c in results.values()}
    assert a_vals == {1} and len(eps_vals) == 1
    for K, c in results.items():
        assert c.mode == "unit_det"
        assert c.chain[0].poly == P("3*z^2 + w^%d" % K)
        assert c.chain[-1].poly == P("1")


def test_run_unit_domain():
    dom = SpecialDomain(GermSet.of([Germ(P("z"), "F1"), Germ(P("w"), "F2")]))
    cert = run(dom, CFG)
    assert cert.mode == "unit" and cert.l == 1
    assert cert.chain[0].poly == P("1")


def test_run_infinite_type():
    dom = SpecialDomain(GermSet.of([Germ(P("z^2"), "F1"), Germ(P("z^2*w"), "F2")]))
    with pytest.raises(InfiniteTypeError):
        run(dom, CFG)


def test_run_single_premultiplier():
    with pytest.raises(InfiniteTypeError):
        run(SpecialDomain(GermSet.of([Germ(P("z^2"), "F1")])), CFG)


def test_run_determinism():
    c1 = run(catlin_dangelo_domain(2, 3, 10), CFG)
    c2 = run(catlin_dangelo_domain(2, 3, 10), CFG)
    assert c1 == c2


def test_run_seed_changes_chain_but_not_invariants():
    c1 = run(catlin_dangelo_domain(2, 3, 10), RunConfig(seed=1))
    c2 = run(catlin_dangelo_domain(2, 3, 10), RunConfig(seed=2))
    assert (c1.d, c1.t, c1.a, c1.l) == (c2.d, c2.t, c2.a, c2.l)


def test_chain_structure_matches_theorem_shape():
    cert = run(catlin_dangelo_domain(2, 3, 10), CFG)
    kinds = [e.kind for e in cert.chain]
    assert kinds[-3:] == ["radical", "radical", "unit"]
    assert all(k in ("jacobian", "combination") for k in kinds[:-3])
    # f_{l-3} is the combined multiplier
    assert cert.chain[-4].label == "Ftilde"


def test_type_hint_verified():
    # a hint below the realized lower bound must be rejected
    bad = catlin_dangelo_domain(2, 3, 10, type_hint=2)
    with pytest.raises(InvariantViolationError):
        run(bad, CFG)


def test_perturbed_family_matches_unperturbed():
    base = run(catlin_dangelo_domain(2, 3, 10), CFG)
    pert = run(
        catlin_dangelo_domain(2, 3, 10, perturbation=("z^15*w^25", "z^20*w^20")), CFG
    )
    assert (base.d, base.t, base.a, base.l) == (pert.d, pert.t, pert.a, pert.l)


# -- classic mode -------------------------------------------------------------------


def test_classic_heier_levels():
    st = classic_kohn(heier_domain(7), config=CFG)
    assert st.terminated_at == 2
    lvl0, lvl1, lvl2 = st.levels
    assert [R(g) for g in lvl0.ideal_generators] == ["3*z^2 + w^7"]
    assert lvl0.radical_kind == "principal_squarefree"
    assert [R(g) for g in lvl1.ideal_generators] == ["z", "w"]
    assert lvl1.root_order == 7
    assert lvl2.radical_kind == "unit"


def test_classic_square_pair():
    dom = SpecialDomain(GermSet.of([Germ(P("z^2"), "F1"), Germ(P("w^2"), "F2")]))
    st = classic_kohn(dom, config=CFG)
    assert [R(g) for g in st.levels[0].ideal_generators] == ["z*w"]
    assert st.terminated_at is not None


def test_classic_single_premultiplier_fails():
    with pytest.raises(InfiniteTypeError):
        classic_kohn(SpecialDomain(GermSet.of([Germ(P("z^2"), "F1")])), config=CFG)


def test_classic_root_order_grows_with_k():
    orders = {}
    for K in (10, 14):
        st = classic_kohn(catlin_dangelo_domain(2, 3, K), config=CFG)
        orders[K] = st.max_root_order()
    assert orders[14] > orders[10]


# -- compare modes ---------------------------------------------------------------------


def test_compare_modes_heier():
    rows = compare_modes([("heier", K, heier_domain(K)) for K in (3, 5, 7)], CFG).rows
    assert [r.classic_root_order for r in rows] == [3, 5, 7]
    assert len({(r.effective_a, r.effective_epsilon) for r in rows}) == 1


def test_compare_modes_text_table():
    txt = compare_modes([("heier", 3, heier_domain(3))], CFG).to_text()
    assert "classic root" in txt and "heier" in txt
