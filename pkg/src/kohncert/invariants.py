"""Contact orders, jet types along varieties, D'Angelo type bounds, multiplicity.

The type lower bound maximizes the set order over candidate curves (branches
of every member plus branches of seeded generic combinations).  The upper
bound is the least power of the maximal ideal contained in the pair ideal of
two verified-generic combinations, computed by the membership engine; that
power provably dominates the type.  Exactness is certified only when the two
bounds meet.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bipoly import BiPoly
from .config import RunConfig, SeededCoefficients
from .errors import GenericityError, InfiniteTypeError, KohncertError, PrecisionError
from .germs import (
    CurveGerm,
    ExtOrder,
    Germ,
    compose_on_curve,
    nu,
    nu_curve,
    nu_gamma,
    nu_gamma_set,
    nu_k_gamma,
    nu_series,
    nu_set,
    order_max,
    order_min,
)
from .membership import (
    LocalBasis,
    local_basis,
    max_ideal_power_bound,
    staircase_dimension,
)
from .puiseux import Branch, BranchSet, branches


@dataclass(frozen=True)
class GermSet:
    members: tuple
    label: str = "S"

    @staticmethod
    def of(germs, label="S"):
        members = tuple(g if isinstance(g, Germ) else Germ(g, "f%d" % i) for i, g in enumerate(germs, 1))
        if not members:
            raise ValueError("a germ set must be nonempty")
        return GermSet(members, label)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class IdealPair:
    F: Germ
    Ftilde: Germ

    def __post_init__(self):
        for g in (self.F, self.Ftilde):
            if g.poly.is_zero:
                raise ValueError("ideal pair generators must be nonzero")
            if g.poly.coeff(0, 0) != 0:
                raise ValueError("ideal pair generators must vanish at the origin")


@dataclass(frozen=True)
class TypeReport:
    lower: ExtOrder
    upper: ExtOrder
    witnesses: tuple  # of (branch description, realized ExtOrder)
    exactness: str  # "certified_exact" | "bounds_only"

    @property
    def value(self):
        return self.lower


# -- contact orders -----------------------------------------------------------


def contact_order(f, V) -> ExtOrder:
    """Largest normalized vanishing order of f along the branches of V."""
    branch_list = list(V.branches if isinstance(V, BranchSet) else V)
    if not branch_list:
        raise ValueError("contact order along an empty branch set")
    vals = [nu_gamma(f, b.curve if isinstance(b, Branch) else b) for b in branch_list]
    return order_max(vals)


def k_jet_type_along(S: GermSet, k, V) -> ExtOrder:
    """sup over branches of the min over members of the k-jet order along the branch."""
    branch_list = list(V.branches if isinstance(V, BranchSet) else V)
    if not branch_list:
        raise ValueError("jet type along an empty branch set")
    vals = []
    for b in branch_list:
        curve = b.curve if isinstance(b, Branch) else b
        vals.append(order_min([nu_k_gamma(f, k, curve) for f in S]))
    return order_max(vals)


# -- generic combinations ------------------------------------------------------


def generic_combination(germs, seeds: SeededCoefficients, label="g"):
    coeffs = seeds.combo(len(germs))
    poly = BiPoly.zero()
    for c, g in zip(coeffs, germs):
        poly = poly + g.poly * c
    name = " + ".join("%s*%s" % (c, g.label) for c, g in zip(coeffs, germs))
    return Germ(poly, "%s = %s" % (label, name)), coeffs


def combination_generic_on(curve, combo: Germ, germs) -> bool:
    """A-posteriori genericity: the combo realizes the set order along the curve."""
    target = nu_gamma_set(germs, curve)
    realized = nu_gamma(combo, curve)
    if target.is_infinite:
        return realized.is_infinite or not realized.is_exact
    try:
        return realized.eq_exact(target)
    except PrecisionError:
        return not realized.is_exact and not target.is_exact and realized.value == target.value


# -- multiplicity ---------------------------------------------------------------


def multiplicity(pair: IdealPair, method="branch_sum", config: RunConfig | None = None) -> ExtOrder:
    """Colength of the pair ideal: branch intersection sum or truncated linear algebra."""
    config = config or RunConfig()
    if method == "branch_sum":
        return _multiplicity_branch_sum(pair, config)
    if method == "linear_algebra":
        return _multiplicity_linear_algebra(pair)
    raise ValueError("unknown multiplicity method %r" % (method,))


def _multiplicity_branch_sum(pair: IdealPair, config: RunConfig) -> ExtOrder:
    V = branches(pair.F, config.precision())
    total = Fraction(0)
    for b in V:
        s = compose_on_curve(pair.Ftilde.poly, b.curve)
        o = nu_series(s)
        if not o.is_exact:
            raise InfiniteTypeError(
                "F and Ftilde share the branch %s (or its order exceeds precision)" % (b,),
                witness=b,
            )
        total += b.multiplicity * b.components * o.value
    if total.denominator != 1:
        raise KohncertError("branch intersection sum is not an integer: %s" % total)
    return ExtOrder.exact(total)


def _multiplicity_linear_algebra(pair: IdealPair) -> ExtOrder:
    """Colength by Gaussian elimination on the truncated monomial basis.

    dim(R / (I + m^D)) is nondecreasing in D and stabilizes exactly at the
    colength; equal values two degrees apart certify stabilization.
    """
    prev = None
    for D in range(2, 42, 2):
        dim = _quotient_dim_truncated([pair.F.poly, pair.Ftilde.poly], D)
        if prev is not None and dim == prev:
            return ExtOrder.exact(dim)
        prev = dim
    raise PrecisionError("quotient dimension did not stabilize below the degree cap")


def _quotient_dim_truncated(gens, D):
    monomials = [(a, b) for d in range(D) for a in range(d, -1, -1) for b in [d - a]]
    index = {m: i for i, m in enumerate(monomials)}
    rows = []
    for g in gens:
        for a in range(D):
            for b in range(D - a):
                row = {}
                for (ga, gb), c in g.terms:
                    key = (ga + a, gb + b)
                    if key[0] + key[1] < D:
                        row[index[key]] = row.get(index[key], Fraction(0)) + c
                if row:
                    rows.append(row)
    rank = 0
    pivots = {}
    for row in rows:
        row = dict(row)
        while row:
            lead = min(row)
            if row[lead] == 0:
                del row[lead]
                continue
            if lead in pivots:
                factor = row[lead]
                for col, val in pivots[lead].items():
                    row[col] = row.get(col, Fraction(0)) - factor * val
                row = {c: v for c, v in row.items() if v != 0}
            else:
                lc = row[lead]
                pivots[lead] = {c: v / lc for c, v in row.items()}
                rank += 1
                break
    return len(monomials) - rank


def power_in_ideal_bound(pair: IdealPair, config: RunConfig | None = None):
    """a = d*t from the vanishing order of F and the contact order of Ftilde along {F=0}.

    Returns (a, d, t); z^a and w^a are then membership-checkable against the pair.
    """
    config = config or RunConfig()
    d = nu(pair.F).require_exact("nu(F)")
    V = branches(pair.F, config.precision())
    t = contact_order(pair.Ftilde, V)
    if not t.is_exact:
        raise InfiniteTypeError("contact order of Ftilde along {F=0} is not finite at precision")
    a_frac = d * t.value
    a = int(a_frac) if a_frac.denominator == 1 else int(a_frac) + 1
    return a, int(d), t.value


# -- D'Angelo type ----------------------------------------------------------------


def _candidate_branches(S: GermSet, config: RunConfig, seeds: SeededCoefficients, n_generic=2):
    """(label, source poly or None, branch set) triples for the type candidates."""
    cands = []
    for f in S:
        if f.poly.is_zero:
            continue
        if f.poly.coeff(0, 0) != 0:
            continue
        cands.append((f.label, f.poly, branches(f, config.precision())))
    if len(S) > 1:
        for i in range(n_generic):
            combo, _ = generic_combination(list(S), seeds, "g%d" % (i + 1))
            if combo.poly.is_zero or combo.poly.coeff(0, 0) != 0:
                continue
            cands.append((combo.label, None, branches(combo, config.precision())))
    return cands


def type_lower_bound(S: GermSet, config: RunConfig, candidates=None):
    """Largest set order over the candidate curves, with witnesses.

    A member is treated as infinite along a curve that arose as one of its own
    branches (the expansion constructs exact roots); the same curve reached
    from several members merges those facts, so a genuinely shared branch
    certifies infinite type with a witness.
    """
    seeds = SeededCoefficients(config.seed, "type")
    if candidates is not None:
        groups = [("supplied", None, candidates)]
    else:
        groups = _candidate_branches(S, config, seeds)
    curves = {}
    for label, source, V in groups:
        for b in (V.branches if isinstance(V, BranchSet) else V):
            entry = curves.setdefault(b.curve, (label, []))
            if source is not None:
                entry[1].append(source)
    witnesses = []
    lower = None
    for curve, (label, sources) in curves.items():
        vals = []
        for g in S:
            if any(g.poly == s for s in sources):
                vals.append(ExtOrder.infinite())
            else:
                vals.append(nu_gamma(g, curve))
        val = order_min(vals)
        witnesses.append(("%s: %s" % (label, curve), val))
        lower = val if lower is None else order_max([lower, val])
    if lower is None:
        raise KohncertError("no candidate curves for the type computation")
    return lower, witnesses


def dangelo_type(S: GermSet, candidates=None, config: RunConfig | None = None) -> TypeReport:
    """Lower/upper bounds for the type of S, with per-branch witnesses.

    candidates: optional BranchSet (or list of Branch) replacing the automatic
    candidate collection.
    """
    config = config or RunConfig()
    lower, witnesses = type_lower_bound(S, config, candidates)
    if lower.is_infinite:
        return TypeReport(lower, ExtOrder.infinite(), tuple(witnesses), "certified_exact")
    upper = _type_upper_bound(S, config)
    if upper is None:
        return TypeReport(lower, ExtOrder.infinite(), tuple(witnesses), "bounds_only")
    exact = "bounds_only"
    try:
        if lower.is_exact and upper.is_exact and lower.value == upper.value:
            exact = "certified_exact"
    except PrecisionError:
        pass
    return TypeReport(lower, upper, tuple(witnesses), exact)


def _type_upper_bound(S: GermSet, config: RunConfig):
    """K(I) of the pair ideal of two generic combinations (type <= K(I))."""
    members = list(S)
    if len(members) == 1:
        return None
    seeds = SeededCoefficients(config.seed, "type-upper")
    for _ in range(config.max_generic_retries):
        g1, c1 = generic_combination(members, seeds, "u1")
        g2, c2 = generic_combination(members, seeds, "u2")
        if c1 == c2 or g1.poly.is_zero or g2.poly.is_zero:
            continue
        budget = _upper_budget(g1, g2)
        try:
            basis = local_basis([g1.poly, g2.poly], budget)
        except KohncertError:
            continue
        k = max_ideal_power_bound(basis)
        if k is not None:
            return ExtOrder.exact(k)
    return None


def _upper_budget(g1, g2):
    d1 = g1.poly.total_degree() or 1
    d2 = g2.poly.total_degree() or 1
    return min(2 * d1 * d2 + 4, 32)
