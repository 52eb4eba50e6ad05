import random
from fractions import Fraction

import pytest

from kohncert.descent import (
    controlled_jacobian,
    descend_chain,
    descend_one,
    jacobian_det,
    set_descent,
    transversal_min,
)
from kohncert.errors import KohncertError
from kohncert.germs import CurveGerm, ExtOrder, Germ, nu_gamma, nu_k_gamma
from kohncert.invariants import GermSet
from kohncert.parse import parse_poly as P
from kohncert.series import TSeries

from strategies import adapted_jet_instance


def curve_0t(prec=48):
    return CurveGerm(TSeries.zero(prec), TSeries.monomial(1, 1, prec))


def G(s, label="f"):
    return Germ(P(s), label)


def test_jacobian_det_pinned():
    assert jacobian_det(G("w"), G("z^3 + z*w^7")).poly == P("-3*z^2 - w^7")
    # Eq. f1 family M=2, N=3, K=10
    assert jacobian_det(G("z^2"), G("w^3 + z^10*w")).poly == P("6*z*w^2 + 2*z^11")
    assert jacobian_det(G("z^2 + w^3"), G("z^2 + w^3")).poly.is_zero


def test_transversal_pinned():
    r = transversal_min(G("z^2 + w^5"), 2, curve_0t())
    assert r.holds and r.value == ExtOrder.exact(0)
    assert r.prev_jet_order == ExtOrder.exact(4)


def test_transversal_counterexample():
    # the hypothesis fails: nu^0 = 2, nu^1 = 1, and 2 > 1 + 1 is false
    r = transversal_min(G("w^2 + z*w^2"), 1, curve_0t())
    assert not r.holds
    assert r.prev_jet_order == ExtOrder.exact(2)
    assert r.jet_order == ExtOrder.exact(1)


def test_transversal_requires_normalized_curve():
    bad = CurveGerm(TSeries.monomial(1, 1, 48), TSeries.monomial(2, 1, 48))
    with pytest.raises(ValueError):
        transversal_min(G("z^2 + w^5"), 1, bad)


def test_controlled_jacobian_pinned():
    c = controlled_jacobian(G("z^2 + w^5"), G("w^2", "phi"), 2, curve_0t())
    assert c.applies
    assert c.G.poly == P("4*z*w")
    assert c.asserted == ExtOrder.exact(1) == c.recomputed


def test_controlled_jacobian_requires_phi_order_2():
    with pytest.raises(KohncertError):
        controlled_jacobian(G("z^2 + w^5"), G("w", "phi"), 1, curve_0t())


def test_sharpness_instance():
    # literal coefficient a = 3: hypothesis fails, conclusion value 2 holds anyway
    c3 = controlled_jacobian(G("z^2 + z*w^2"), G("w^3 + 3*z*w", "phi"), 2, curve_0t())
    assert not c3.applies and c3.recomputed == ExtOrder.exact(2)
    # cancellation coefficient a = kl/(s-k+1) = 6: the failure value l = 3 appears
    c6 = controlled_jacobian(G("z^2 + z*w^2"), G("w^3 + 6*z*w", "phi"), 2, curve_0t())
    assert not c6.applies and c6.recomputed == ExtOrder.exact(3)


def test_controlled_jacobian_randomized_holds():
    rng = random.Random(61)
    held = 0
    for _ in range(300):
        F, phi, gamma, k = adapted_jet_instance(rng)
        try:
            c = controlled_jacobian(F, phi, k, gamma)
        except KohncertError:
            continue
        if c.applies:
            held += 1
            assert c.recomputed == c.asserted  # also enforced internally
    assert held >= 120


def test_descend_one_pinned():
    g, realized, kind = descend_one(G("z^2 + w^5"), G("w^2", "phi"), 2, curve_0t())
    assert kind == "jacobian" and g.poly == P("4*z*w")
    assert realized == ExtOrder.exact(1)


def test_descend_one_keeps_when_possible():
    # nu^0 = 2 <= nu^1 + nu_gamma(phi) - 1 = 1 + 2 - 1: keep F
    g, realized, kind = descend_one(G("w^2 + z*w^2"), G("w^2", "phi"), 1, curve_0t())
    assert kind == "kept" and g.poly == P("w^2 + z*w^2")


def test_descend_chain_cd_table():
    f1 = G("6*z*w^2 + 2*z^11", "f1")
    phi = G("w^3 + z^10*w", "F2")
    st = descend_chain(f1, phi, curve_0t(64), 0)
    assert st.jacobian_count == 1  # f_M with M = 2: one determinant
    assert nu_gamma(st.current, curve_0t(64)) == ExtOrder.exact(4)  # M(N-1) = 4
    assert nu_k_gamma(st.current, 0, curve_0t(64)) == ExtOrder.exact(4)
    # target_k = nu(f): trivial chain
    st0 = descend_chain(f1, phi, curve_0t(64), 3)
    assert st0.jacobian_count == 0


def test_descend_chain_bounds_randomized():
    rng = random.Random(67)
    ran = 0
    for _ in range(80):
        F, phi, gamma, _ = adapted_jet_instance(rng)
        from kohncert.germs import nu

        if not (nu(F).is_exact and nu(phi).is_exact and nu(phi).value >= 2):
            continue
        m = int(nu(F).value)
        try:
            n_phi = nu_gamma(phi, gamma)
            if not n_phi.is_exact:
                continue
            st = descend_chain(F, phi, gamma, 0)
        except KohncertError:
            continue
        ran += 1
        assert st.jacobian_count <= m
        final = nu_k_gamma(st.current, 0, gamma)
        bound = m * (n_phi.value - 1)
        assert not final.gt(ExtOrder.exact(bound))
    assert ran >= 30


def test_set_descent_levels_and_cap():
    S0 = GermSet.of([G("6*z*w^2 + 2*z^11", "f1")])
    Phi = [G("z^2", "F1"), G("w^3 + z^10*w", "F2")]
    levels, certs = set_descent(S0, Phi, 2)
    assert len(levels) == 3
    assert len(levels[0]) == 1
    assert len(levels[1]) > 1  # new determinants appear
    with pytest.raises(KohncertError):
        set_descent(S0, Phi, 3, cap=3)


def test_set_descent_jet_type_certificates():
    from kohncert.puiseux import branches

    S0 = GermSet.of([G("6*z*w^2 + 2*z^11", "f1")])
    Phi = [G("z^2", "F1"), G("w^3 + z^10*w", "F2")]
    V = branches(G("z", "z"), 64)
    levels, certs = set_descent(S0, Phi, 2, branch_sets=[V])
    assert certs
    for k, label, val in certs:
        assert val.lo() is not None
