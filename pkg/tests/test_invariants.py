import random
from fractions import Fraction

import pytest

from kohncert.config import RunConfig
from kohncert.errors import InfiniteTypeError
from kohncert.germs import CurveGerm, ExtOrder, Germ, nu_gamma
from kohncert.invariants import (
    GermSet,
    IdealPair,
    contact_order,
    dangelo_type,
    k_jet_type_along,
    multiplicity,
    power_in_ideal_bound,
)
from kohncert.parse import parse_poly as P
from kohncert.puiseux import branches
from kohncert.series import TSeries

from strategies import zero_dim_pair

CFG = RunConfig()


def axis_branchset():
    return branches(Germ(P("z"), "z"), 64)


def test_contact_order_along_single_branch():
    # w^{M(N-1)} = w^4 along the branch (0, t) of {z = 0}
    V = axis_branchset()
    assert contact_order(Germ(P("w^4"), "g"), V) == ExtOrder.exact(4)


def test_contact_order_max_over_branches():
    V = branches(Germ(P("z*w"), "zw"), 64)
    # z vanishes identically on the branch z=0: contact order is unresolved/infinite
    o = contact_order(Germ(P("z"), "g"), V)
    assert not o.is_exact
    # restricted to the single branch (t, 0), the contact order is 1
    only_t0 = [b for b in V if b.curve.beta.known_zero]
    assert contact_order(Germ(P("z"), "g"), only_t0) == ExtOrder.exact(1)


def test_contact_order_cusp():
    V = branches(Germ(P("w^2 - z^3"), "cusp"), 64)
    assert contact_order(Germ(P("z"), "g"), V) == ExtOrder.exact(1)


def test_k_jet_type_examples():
    S = GermSet.of([Germ(P("6*z*w^2 + 2*z^11"), "f1")])
    V = axis_branchset()
    # k = 0 collapses to the type along V; f1 vanishes on (0,t), so unresolved
    assert not k_jet_type_along(S, 0, V).is_exact
    # k = M-1 = 1 gives N-1 = 2
    assert k_jet_type_along(S, 1, V) == ExtOrder.exact(2)
    # k >= min member order gives 0
    assert k_jet_type_along(S, 3, V) == ExtOrder.exact(0)


def test_dangelo_type_heier():
    S = GermSet.of([Germ(P("z^3 + z*w^7"), "F1"), Germ(P("w"), "F2")], "heier")
    r = dangelo_type(S, config=CFG)
    assert r.exactness == "certified_exact"
    assert r.lower == ExtOrder.exact(3) and r.upper == ExtOrder.exact(3)


def test_dangelo_type_linear():
    r = dangelo_type(GermSet.of([Germ(P("z"), "a"), Germ(P("w"), "b")]), config=CFG)
    assert r.lower == ExtOrder.exact(1) and r.exactness == "certified_exact"


@pytest.mark.parametrize("M,N", [(2, 3), (2, 4), (3, 3)])
def test_dangelo_type_cd_family(M, N):
    S = GermSet.of(
        [Germ(P("z^%d" % M), "F1"), Germ(P("w^%d + z^10*w" % N), "F2")], "cd"
    )
    r = dangelo_type(S, config=CFG)
    assert r.lower == ExtOrder.exact(max(M, N))
    assert r.upper.ge(r.lower)


def test_dangelo_type_infinite_for_singleton():
    r = dangelo_type(GermSet.of([Germ(P("z^2"), "a")]), config=CFG)
    assert r.lower.is_infinite
    assert r.exactness == "certified_exact"


def test_multiplicity_pinned():
    assert multiplicity(IdealPair(Germ(P("z^2"), "F"), Germ(P("w^3"), "G")), "branch_sum") == ExtOrder.exact(6)
    assert multiplicity(IdealPair(Germ(P("z"), "F"), Germ(P("w^2 - z^3"), "G")), "branch_sum") == ExtOrder.exact(2)
    assert multiplicity(IdealPair(Germ(P("z"), "F"), Germ(P("w^2 - z^3"), "G")), "linear_algebra") == ExtOrder.exact(2)


def test_multiplicity_common_branch_rejected():
    with pytest.raises(InfiniteTypeError):
        multiplicity(IdealPair(Germ(P("z*w"), "F"), Germ(P("z"), "G")), "branch_sum")


def test_power_in_ideal_bound_examples():
    a, d, t = power_in_ideal_bound(IdealPair(Germ(P("z^2"), "F"), Germ(P("w^3"), "G")))
    assert (a, d, t) == (6, 2, 3)
    a, d, t = power_in_ideal_bound(IdealPair(Germ(P("z"), "F"), Germ(P("w"), "G")))
    assert a == 1
    # the section-6 pair: d = M+N-2 = 3, t = max(N(M-1), M(N-1)) = 4, a = 12
    F = Germ(P("6*z*w^2 + 2*z^11"), "F")
    Ft = Germ(P("w^4 + z^3"), "Ft")
    a, d, t = power_in_ideal_bound(IdealPair(F, Ft))
    assert (a, d, t) == (12, 3, 4)


def test_multiplicity_oracle_agreement_randomized():
    rng = random.Random(19)
    agree = 0
    for _ in range(60):
        f, g = zero_dim_pair(rng)
        try:
            pair = IdealPair(Germ(f, "F"), Germ(g, "G"))
            m_b = multiplicity(pair, "branch_sum")
            m_l = multiplicity(pair, "linear_algebra")
        except Exception:
            continue
        assert m_b == m_l, (str(f), str(g))
        agree += 1
    assert agree >= 25


def test_set_order_ideal_closure():
    # adding f*g + h*f' for members never lowers the computed minimum
    rng = random.Random(29)
    S = [Germ(P("z^2 + w^3"), "a"), Germ(P("z*w"), "b")]
    gamma = CurveGerm(TSeries.monomial(2, 1, 48), TSeries.monomial(3, 1, 48))
    from kohncert.germs import nu_gamma_set

    base = nu_gamma_set(S, gamma)
    for _ in range(20):
        h = Germ(S[0].poly * Fraction(rng.randint(1, 5)) + S[1].poly * S[0].poly, "combo")
        v = nu_gamma(h, gamma)
        assert not base.gt(v)
