import random

import pytest

from kohncert.bipoly import BiPoly
from kohncert.errors import KohncertError
from kohncert.germs import Germ
from kohncert.invariants import IdealPair, multiplicity
from kohncert.membership import (
    local_basis,
    max_ideal_power_bound,
    min_power_in_ideal,
    reduces_to_zero,
    staircase_dimension,
)
from kohncert.parse import parse_poly as P

from strategies import zero_dim_pair


def test_monomial_ideal_is_own_basis():
    b = local_basis([P("z^2"), P("w^3")], 10)
    assert set(b.generators) == {P("z^2"), P("w^3")}


def test_reduction_by_z():
    b = local_basis([P("z"), P("w^2 - z^3")], 10)
    # basis is equivalent to (z, w^2): quotient staircase {1, w}
    assert staircase_dimension(b) == 2
    assert reduces_to_zero(P("w^2"), b)


def test_spair_completion():
    b = local_basis([P("w^2 - z^3"), P("z*w")], 12)
    assert any(g == P("z^4") or g == P("-z^4") for g in b.generators)
    assert staircase_dimension(b) == 5


def test_membership_pinned():
    b = local_basis([P("z^2"), P("w^3")], 12)
    assert reduces_to_zero(P("z^6"), b)
    assert not reduces_to_zero(P("w"), b)
    assert not reduces_to_zero(P("z*w^2"), b)
    assert reduces_to_zero(P("z^2*w + w^4"), b)


def test_ideal_pair_surface():
    pair = IdealPair(Germ(P("z^2"), "F"), Germ(P("w^3"), "G"))
    b = local_basis(pair, 12)
    assert staircase_dimension(b) == 6


def test_min_power_and_max_ideal_power():
    b = local_basis([P("z^2"), P("w^3")], 12)
    assert min_power_in_ideal("z", b) == 2
    assert min_power_in_ideal("w", b) == 3
    assert max_ideal_power_bound(b) == 4  # z*w^2 is the last holdout


def test_degree_budget_guard():
    b = local_basis([P("z^2"), P("w^3")], 4)
    with pytest.raises(KohncertError):
        reduces_to_zero(P("z^4*w^4"), b)


def test_staircase_matches_multiplicity_oracle():
    rng = random.Random(3)
    agree = 0
    for _ in range(40):
        f, g = zero_dim_pair(rng)
        pair_ok = True
        try:
            pair = IdealPair(Germ(f, "F"), Germ(g, "G"))
            m_lin = multiplicity(pair, "linear_algebra")
        except Exception:
            pair_ok = False
        if not pair_ok:
            continue
        b = local_basis([f, g], int(m_lin.value) + 6)
        dim = staircase_dimension(b)
        if dim is None:
            continue
        assert dim == int(m_lin.value)
        agree += 1
    assert agree >= 15
