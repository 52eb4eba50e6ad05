"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

All arithmetic is exact; unless stated otherwise the tolerance is bit
equality.  Run with `pytest tests/test_acceptance.py -v -s` to see the
per-criterion lines.
"""

import json
import os
import random
import time
from fractions import Fraction

import pytest

from kohncert.config import RunConfig
from kohncert.descent import controlled_jacobian, transversal_min
from kohncert.errors import KohncertError, PrecisionError
from kohncert.germs import Germ, nu, nu_gamma, nu_k, nu_k_gamma
from kohncert.invariants import GermSet, IdealPair, contact_order, multiplicity
from kohncert.kohn import (
    SpecialDomain,
    catlin_dangelo_domain,
    classic_kohn,
    heier_domain,
    run,
    step1,
    step2,
)
from kohncert.membership import local_basis, reduces_to_zero, staircase_dimension
from kohncert.parse import parse_poly as P
from kohncert.parse import render_poly as R
from kohncert.puiseux import branches

from strategies import adapted_jet_instance, random_curve, random_vanishing_bipoly, zero_dim_pair

CFG = RunConfig()
INPUTS = os.path.join(os.path.dirname(__file__), os.pardir, "inputs")


def report(criterion, ok, detail):
    print("ACCEPTANCE %s: %s  (%s)" % (criterion, "PASS" if ok else "FAIL", detail))
    assert ok, detail


def test_criterion_1_heier_reproduction():
    results = {}
    worst = 0.0
    for K in (3, 5, 7, 9):
        t0 = time.monotonic()
        dom = heier_domain(K)
        # (a) step1 emits f1 = 3z^2 + w^K exactly
        s1 = step1(dom.premultipliers, 3, CFG)
        assert s1.f1.poly == P("3*z^2 + w^%d" % K), "step1 f1 mismatch at K=%d" % K
        # (b) classic mode: I0, J(S u I0) ~ (z, w^K), root order exactly K
        st = classic_kohn(dom, config=CFG)
        lvl0, lvl1 = st.levels[0], st.levels[1]
        assert [R(g) for g in lvl0.ideal_generators] == ["3*z^2 + w^%d" % K]
        assert [R(g) for g in lvl1.jacobian_generators] == ["z", "w^%d" % K]
        jbasis = local_basis(list(lvl1.jacobian_generators), 2 * K + 4)
        assert reduces_to_zero(P("z"), jbasis) and reduces_to_zero(P("w^%d" % K), jbasis)
        assert lvl1.root_order == K
        # (c) effective mode across K
        cert = run(dom, CFG)
        results[K] = (cert.a, cert.epsilon_lower)
        worst = max(worst, time.monotonic() - t0)
        assert worst < 5.0, "runtime %.2fs exceeds 5s at K=%d" % (worst, K)
    assert len(set(results.values())) == 1, "a / epsilon vary with K: %s" % results
    report(
        "1 (Heier reproduction)",
        True,
        "f1 exact, I0/J1/root order K for K in {3,5,7,9}; effective (a, eps) = %s constant; max %.2fs"
        % (next(iter(results.values())), worst),
    )


def test_criterion_2_catlin_dangelo_reproduction():
    t0 = time.monotonic()
    dom = catlin_dangelo_domain(2, 3, 10)
    s1 = step1(dom.premultipliers, 3, CFG)
    assert s1.f1.poly == P("6*z*w^2 + 2*z^11"), "f1 mismatch"
    # jet table along gamma = (0, t)
    from kohncert.germs import CurveGerm
    from kohncert.series import TSeries

    gamma = CurveGerm(TSeries.zero(64), TSeries.monomial(1, 1, 64))
    assert nu_k_gamma(s1.f1, 1, gamma).require_exact() == 2  # nu^{M-1}(f1) = N-1
    s2 = step2(s1.f1, dom.premultipliers, 3, CFG)
    axis_log = next(bl for bl in s2.branch_logs if bl.branch.startswith("(O("))
    f2_label = axis_log.steps[-1][0]
    f2 = next(
        e for e in (s2.new_entries) if e.label == f2_label
    )
    assert nu_k_gamma(f2, 0, gamma).require_exact() == 4  # nu^{M-2}(f2) = 2(N-1)
    terminal_orders = sorted(bl.terminal_order for bl in s2.branch_logs)
    assert terminal_orders == ["3", "4"]  # N(M-1) and M(N-1)
    cert = run(dom, CFG)
    assert (cert.d, cert.t, cert.a) == (3, Fraction(4), 12)
    assert cert.T == 3 and cert.l <= 10 and cert.a <= 72
    names = {c.name: c for c in cert.bound_checks}
    assert names["l <= T(T-1)+4"].passed and names["l <= T(T-1)+4"].bound == "10"
    assert names["a <= T^2 (T-1)^3"].passed and names["a <= T^2 (T-1)^3"].bound == "72"
    dt = time.monotonic() - t0
    assert dt < 30.0, "runtime %.2fs exceeds 30s" % dt
    report(
        "2 (Catlin-D'Angelo reproduction)",
        True,
        "f1 exact; jet table (2, 4); terminal orders (4, 3); d=3 t=4 a=12; l=%d <= 10; %.2fs"
        % (cert.l, dt),
    )


def test_criterion_3_perturbation_stability():
    t0 = time.monotonic()
    base = run(catlin_dangelo_domain(2, 3, 10), CFG)
    pert = run(
        catlin_dangelo_domain(2, 3, 10, perturbation=("z^15*w^25", "z^20*w^20")), CFG
    )
    same = (base.d, base.t, base.a, base.l) == (pert.d, pert.t, pert.a, pert.l)
    dt = time.monotonic() - t0
    assert dt < 60.0, "runtime %.2fs exceeds 60s" % dt
    report(
        "3 (perturbation stability, L=40)",
        same,
        "d=%d t=%s a=%d l=%d unchanged under degree-40 tails; %.2fs"
        % (pert.d, pert.t, pert.a, pert.l, dt),
    )


def test_criterion_4_jacobian_control_suite():
    rng = random.Random(2026)
    held = 0
    attempts = 0
    while held < 500 and attempts < 6000:
        attempts += 1
        F, phi, gamma, k = adapted_jet_instance(rng)
        try:
            c = controlled_jacobian(F, phi, k, gamma)
        except KohncertError:
            continue
        if c.applies:
            # equality is re-verified inside; reaching here means it held
            assert c.recomputed == c.asserted
            held += 1
    assert held == 500, "only %d hypothesis-holding instances in %d attempts" % (held, attempts)
    # sharpness: phi = w^3 + a z w with k=2, s=2, l=3.  The cancellation value
    # is a = kl/(s-k+1) = 6 (the paper's a = lk/s = 3 does not cancel; see the
    # decisions ledger): the order jumps to l = 3 != 2.
    from kohncert.germs import CurveGerm
    from kohncert.series import TSeries

    gamma = CurveGerm(TSeries.zero(48), TSeries.monomial(1, 1, 48))
    c6 = controlled_jacobian(Germ(P("z^2 + z*w^2"), "F"), Germ(P("w^3 + 6*z*w"), "phi"), 2, gamma)
    assert not c6.applies and c6.recomputed.require_exact() == 3
    c3 = controlled_jacobian(Germ(P("z^2 + z*w^2"), "F"), Germ(P("w^3 + 3*z*w"), "phi"), 2, gamma)
    assert not c3.applies and c3.recomputed.require_exact() == 2
    report(
        "4 (jacobian-control suite)",
        True,
        "500/500 hypothesis-holding instances recompute exactly; sharpness instance gives 3 != 2",
    )


def test_criterion_5_transversal_suite():
    rng = random.Random(2027)
    held = 0
    attempts = 0
    while held < 500 and attempts < 6000:
        attempts += 1
        F, _, gamma, k = adapted_jet_instance(rng)
        try:
            r = transversal_min(F, k, gamma)
        except (KohncertError, ValueError):
            continue
        if r.holds:
            # the internal check asserts the minimum is at the k-th z-derivative
            held += 1
    assert held == 500, "only %d hypothesis-holding instances" % held
    from kohncert.germs import CurveGerm
    from kohncert.series import TSeries

    gamma = CurveGerm(TSeries.zero(48), TSeries.monomial(1, 1, 48))
    r = transversal_min(Germ(P("w^2 + z*w^2"), "F"), 1, gamma)
    assert not r.holds
    assert r.prev_jet_order.require_exact() == 2 and r.jet_order.require_exact() == 1
    report(
        "5 (transversal-minimum suite)",
        True,
        "500/500 instances realize the minimum at dz^k; counterexample flagged with nu0=2, nu1=1",
    )


def test_criterion_6_order_laws():
    rng = random.Random(2028)
    violations = 0
    for _ in range(1000):
        f = random_vanishing_bipoly(rng)
        gamma = random_curve(rng)
        k = rng.randint(0, 4)
        lhs, base = nu_gamma(f, gamma), nu(f)
        if lhs.is_exact and base.is_exact and lhs.value < base.value:
            violations += 1  # Lemma: order along a curve never drops below nu
        vals = [nu_k_gamma(f, j, gamma) for j in (k, k + 1)]
        try:
            if vals[1].gt(vals[0]):
                violations += 1  # monotonicity in the jet order
        except PrecisionError:
            pass
        if base.is_exact:
            m = int(base.value)
            if nu_k(f, m) != type(nu_k(f, m)).exact(0):
                violations += 1
            stab = nu_k_gamma(f, m, gamma)
            if not (stab.is_exact and stab.value == 0):
                violations += 1  # stabilisation at k = nu(f)
    report(
        "6 (order-law suite)",
        violations == 0,
        "1000 randomized (f, gamma, k) instances, %d violations" % violations,
    )


def test_criterion_7_multiplicity_oracles():
    rng = random.Random(2029)
    cfg = RunConfig(branch_precision=64)
    accepted = 0
    attempts = 0
    while accepted < 200 and attempts < 2000:
        attempts += 1
        f, g = zero_dim_pair(rng)
        try:
            pair = IdealPair(Germ(f, "F"), Germ(g, "G"))
            m_branch = multiplicity(pair, "branch_sum", cfg)
            m_linear = multiplicity(pair, "linear_algebra", cfg)
        except KohncertError:
            continue
        except ValueError:
            continue
        D = int(m_branch.require_exact())
        basis = local_basis([f, g], D + 4)
        stair = staircase_dimension(basis)
        assert m_branch == m_linear, (R(f), R(g))
        assert stair == D, (R(f), R(g), stair, D)
        # Lemma bound D(I) <= d * t, with t the contact order along {F = 0}
        d = int(nu(f).require_exact())
        t = contact_order(Germ(g, "G"), branches(Germ(f, "F"), cfg.precision()))
        assert D <= d * t.require_exact(), (R(f), R(g))
        accepted += 1
    report(
        "7 (multiplicity oracle equivalence)",
        accepted == 200,
        "%d/200 pairs: branch sum = linear algebra = staircase count, D <= d*t" % accepted,
    )


def test_criterion_8_membership_verification():
    checked = []
    # criteria 2-3 instances: the standard chains claim z^a, w^a in (f1, Ftilde)
    for label, dom in (
        ("cd", catlin_dangelo_domain(2, 3, 10)),
        ("cd-perturbed", catlin_dangelo_domain(2, 3, 10, perturbation=("z^15*w^25", "z^20*w^20"))),
    ):
        cfg = RunConfig(verify_membership=True)
        cert = run(dom, cfg)
        assert cert.membership_checked and cert.a == 12
        checked.append("%s: z^%d, w^%d" % (label, cert.a, cert.a))
    # criterion 1 instances terminate by determinants without a radical step
    # (a = 1, no (F, Ftilde) pair); their membership claim is z in (f1, f2),
    # which is what gets verified (see the decisions ledger).
    for K in (3, 5, 7, 9):
        cert = run(heier_domain(K), CFG)
        assert cert.mode == "unit_det" and cert.a == 1
        f1, f2 = cert.chain[0].poly, cert.chain[1].poly
        basis = local_basis([f1, f2], 2 * K + 4)
        assert reduces_to_zero(P("z"), basis)
        checked.append("heier-%d: z" % K)
    report("8 (membership verification)", True, "; ".join(checked))


def test_criterion_9_determinism():
    from kohncert.certfile import certificate_payload, render_certificate

    texts = []
    for _ in range(2):
        cert = run(catlin_dangelo_domain(2, 3, 10), RunConfig(seed=1))
        texts.append(render_certificate(certificate_payload(cert)))
    report(
        "9 (determinism)",
        texts[0] == texts[1],
        "two runs with seed 1 give byte-identical certificates (%d bytes)" % len(texts[0]),
    )
