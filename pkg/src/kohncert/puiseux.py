"""Newton-Puiseux decomposition of plane-curve germs into branches.

The classical iteration, organized so that conjugate parametrizations are
never generated twice: for an edge of the Newton polygon with exponent
lambda = P/Q (gcd(P,Q)=1), the edge equation is written in u = c^Q, so each
root of the u-polynomial corresponds to one whole orbit {zeta^P c : zeta^Q=1}
of leading coefficients, i.e. one conjugacy class of parametrizations.  One
representative is expanded; the class size is tracked through recursion and
divided by the final ramification, giving the number of distinct C-branches
the representative stands for (``components``).

Coefficients stay rational whenever possible; one simple algebraic extension
is adjoined on demand.  A configuration that would require a second
independent extension raises FieldTowerError with the offending polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bipoly import BiPoly
from .errors import FieldTowerError, InvariantViolationError, KohncertError, PrecisionError
from .field import AlgExt, minpoly_of
from .germs import CurveGerm, Germ, nu, nu_curve, nu_series
from .kernels import (
    divexact_bi,
    factor_rational_uni,
    squarefree_decompose,
    uni_deg,
    uni_trim,
)
from .series import TSeries

_MAX_DEPTH = 64


@dataclass(frozen=True)
class Edge:
    """Lower Newton-polygon edge from (a1,b1) to (a2,b2), slope -(b1-b2)/(a2-a1)."""

    a1: int
    b1: int
    a2: int
    b2: int

    @property
    def slope(self):
        return Fraction(self.b2 - self.b1, self.a2 - self.a1)

    @property
    def exponent(self):
        """lambda = P/Q with w ~ c z^lambda along branches of this edge."""
        return Fraction(self.a2 - self.a1, self.b1 - self.b2)


@dataclass(frozen=True)
class NewtonPolygon:
    support: tuple  # all exponent pairs, sorted
    edges: tuple  # of Edge, sorted by slope
    vertices: tuple


def newton_polygon(f) -> NewtonPolygon:
    """Lower convex hull of the exponent support (toward the origin)."""
    p = f.poly if isinstance(f, Germ) else f
    if p.is_zero:
        raise KohncertError("Newton polygon of the zero polynomial")
    support = sorted({ab for ab, _ in p.terms})
    best = {}
    for a, b in support:
        if a not in best or b < best[a]:
            best[a] = b
    pts = sorted(best.items())
    hull = []
    for a, b in pts:
        while len(hull) >= 2:
            (a1, b1), (a2, b2) = hull[-2], hull[-1]
            # drop the middle point unless it turns left (strictly convex)
            if (a2 - a1) * (b - b1) - (b2 - b1) * (a - a1) <= 0:
                hull.pop()
            else:
                break
        hull.append((a, b))
    edges = []
    for (a1, b1), (a2, b2) in zip(hull, hull[1:]):
        if b1 > b2:
            edges.append(Edge(a1, b1, a2, b2))
    edges.sort(key=lambda e: e.slope)
    return NewtonPolygon(tuple(support), tuple(edges), tuple(hull))


@dataclass(frozen=True)
class Branch:
    curve: CurveGerm
    multiplicity: int
    components: int  # distinct C-branches this conjugacy class represents
    field_note: str

    def __str__(self):
        return "%s  [mult %d, components %d, %s]" % (
            self.curve,
            self.multiplicity,
            self.components,
            self.field_note,
        )


@dataclass(frozen=True)
class BranchSet:
    branches: tuple
    source: str
    precision: int

    def __iter__(self):
        return iter(self.branches)

    def __len__(self):
        return len(self.branches)


# -- expansion ----------------------------------------------------------------


def _edge_data(p, edge):
    """(P, Q, level ell, u-polynomial chi) for an edge of the polygon of p."""
    lam = edge.exponent
    P, Q = lam.numerator, lam.denominator
    ell = edge.a1 * Q + edge.b1 * P
    span = (edge.b1 - edge.b2) // Q
    chi = [Fraction(0)] * (span + 1)
    for j in range(span + 1):
        a, b = edge.a1 + j * P, edge.b1 - j * Q
        chi[span - j] = p.coeff(a, b)
    # chi[i] multiplies u^i where u = c^Q; constant term is the (a2,b2) endpoint
    return P, Q, ell, uni_trim(chi)


def _qth_root_rational(u0, q):
    """A rational c with c^q = u0, or None."""
    if u0 == 0:
        return Fraction(0)
    sign = 1
    if u0 < 0:
        if q % 2 == 0:
            return None
        sign = -1
        u0 = -u0

    def iroot(n, k):
        if n < 2:
            return n
        r = round(n ** (1.0 / k))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand**k == n:
                return cand
        return None

    rn = iroot(u0.numerator, q)
    rd = iroot(u0.denominator, q)
    if rn is None or rd is None:
        return None
    return sign * Fraction(rn, rd)


def _leading_coeff_for(u_factor, Q, base_minpoly):
    """Choose c with c^Q a root of the irreducible u_factor; adjoin if needed.

    Returns (c, class_degree) where class_degree is the number of C-roots of
    u_factor (each standing for a full zeta_Q-orbit of leading coefficients).
    """
    deg = uni_deg(u_factor)
    if deg == 1:
        u0 = -u_factor[0] / u_factor[1]
        if isinstance(u0, Fraction):
            c = _qth_root_rational(u0, Q)
            if c is not None:
                return c, 1
            if base_minpoly is not None:
                raise FieldTowerError(
                    "root of x^%d - %s needs a second extension" % (Q, u0)
                )
            # adjoin a root of an irreducible factor of x^Q - u0
            cs = [Fraction(0)] * (Q + 1)
            cs[0], cs[Q] = -u0, Fraction(1)
            fac = factor_rational_uni(cs)[0][0]
            if uni_deg(fac) == 1:
                return -fac[0] / fac[1], 1
            return AlgExt.generator(fac), 1
        # u0 in an existing extension
        if Q == 1:
            return u0, 1
        raise FieldTowerError(
            "cannot take a %d-th root inside the current extension" % Q
        )
    # deg >= 2: minimal polynomial of c divides u_factor(x^Q)
    if base_minpoly is not None:
        raise FieldTowerError(
            "edge polynomial %s needs a second extension" % (u_factor,)
        )
    if any(not isinstance(cf, Fraction) for cf in u_factor):
        raise FieldTowerError("edge polynomial over an extension is not linear")
    comp = [Fraction(0)] * (deg * Q + 1)
    for i, cf in enumerate(u_factor):
        comp[i * Q] = cf
    fac = factor_rational_uni(comp)[0][0]
    theta = AlgExt.generator(fac)
    return theta, deg


def _substitute_edge(p, P, Q, ell, c):
    """g(t, y) = p(t^Q, t^P (c + y)) / t^ell as a BiPoly in (t, y)."""
    d = {}
    for (a, b), co in p.terms:
        base_t = a * Q + b * P - ell
        for i in range(b + 1):
            coeff = co * math.comb(b, i) * (c ** (b - i))
            key = (base_t, i)
            d[key] = d.get(key, Fraction(0)) + coeff
    trunc = None
    if p.trunc is not None:
        trunc = p.trunc * min(P, Q) - ell
        if trunc < 1:
            raise PrecisionError("truncation exhausted in Puiseux substitution")
    return BiPoly.make(d, trunc)


def _hensel_solve(g, precision):
    """The unique series y(t), y(0)=0, with g(t, y(t)) = 0, when g_y(0,0) != 0."""
    if g.trunc is not None:
        precision = min(precision, g.trunc - 1)
        if precision < 1:
            raise PrecisionError("truncation exhausted in Hensel lifting")
    gy = g.partial("w")
    c1 = gy.coeff(0, 0)
    if c1 == 0:
        raise InvariantViolationError("Hensel step with vanishing y-derivative")
    # y is kept as an exact polynomial approximant; `correct` tracks the
    # t-order up to which it agrees with the true root (Newton doubles it)
    y_data = {}
    correct = 1
    while correct < precision:
        target = min(2 * correct, precision)
        y = TSeries.make(dict(y_data), precision)
        r = _eval_series(g, y, target)
        if not r.known_zero:
            if r.order_lb() < correct:
                raise InvariantViolationError("Hensel residual below certified order")
            inv = _eval_series(gy, y, target).inverse()
            dy = (r * inv).truncate(target)
            for e, c in dy.coeffs:
                y_data[e] = y_data.get(e, Fraction(0)) - c
        correct = target
    return TSeries.make(y_data, precision)


def _eval_series(g, y, precision):
    """g(t, y(t)) truncated to `precision` (t is the z-slot of g)."""
    t = TSeries.monomial(1, 1, precision)
    out = TSeries.zero(precision)
    y_pows = [TSeries.monomial(0, 1, precision)]
    deg_y = g.degree_in("w") or 0
    for _ in range(deg_y):
        y_pows.append((y_pows[-1] * y).truncate(precision))
    for (a, b), c in g.terms:
        if a >= precision:
            continue
        term = y_pows[b].shift(a).scale(c)
        out = out + term.truncate(precision)
    return out.truncate(precision)


def _expand(p, precision, depth, base_minpoly):
    """All solution classes y(t) of p(t, y)=0 with y(0)=0.

    Returns a list of (ram, series_terms, leaves, minpoly) where the branch in
    the parent's coordinates is t -> s^ram, y = series in s; `leaves` counts
    the C-parametrization leaves collapsed into this record.
    """
    if depth > _MAX_DEPTH:
        raise KohncertError("Newton-Puiseux recursion depth exceeded")
    results = []
    # y | p: the zero series is a solution class of its own
    min_b = min(ab[1] for ab, _ in p.terms)
    if min_b > 0:
        results.append((1, TSeries.zero(precision), 1, base_minpoly))
        p = divexact_bi(p, BiPoly.monomial(0, min_b))
        if all(ab[1] == 0 for ab, _ in p.terms):
            return results
    if p.coeff(0, 0) != 0:
        return results
    if min(ab[0] for ab, _ in p.terms) > 0:
        raise InvariantViolationError("t divides a Puiseux iteration polynomial")
    polygon = newton_polygon(p)
    for edge in polygon.edges:
        P, Q, ell, chi = _edge_data(p, edge)
        factors = _factor_edge(chi, base_minpoly)
        for u_factor, mult in factors:
            c, class_deg = _leading_coeff_for(u_factor, Q, base_minpoly)
            mp = minpoly_of(c) or base_minpoly
            g = _substitute_edge(p, P, Q, ell, c)
            if mult == 1:
                subs = [(1, _hensel_solve(g, precision), 1, mp)]
            else:
                subs = _expand(g, precision, depth + 1, mp)
            for ram, ys, leaves, sub_mp in subs:
                # y_parent(s) = s^{P*ram} * (c + ys(s)), t = s^{Q*ram}
                shifted = ys.shift(P * ram) if not ys.known_zero else TSeries.zero(
                    ys.precision + P * ram
                )
                series = shifted + TSeries.monomial(P * ram, c, precision + P * ram)
                results.append(
                    (Q * ram, series.truncate(precision), class_deg * Q * leaves, sub_mp)
                )
    return results


def _factor_edge(chi, base_minpoly):
    """Irreducible factors (with multiplicity) of the edge u-polynomial."""
    if uni_deg(chi) < 1:
        return []
    if all(isinstance(c, Fraction) for c in chi):
        return factor_rational_uni(chi)
    # over an extension: only a full splitting into linear factors is supported
    if base_minpoly is None:
        raise InvariantViolationError("extension coefficients without an extension")
    factors = []
    work = list(chi)
    while uni_deg(work) >= 1:
        if uni_deg(work) == 1:
            factors.append(([work[0] / work[1], Fraction(1)], 1))
            break
        raise FieldTowerError(
            "nonlinear edge polynomial over an existing extension"
        )
    merged = {}
    for f, m in factors:
        key = tuple(str(c) for c in f)
        if key in merged:
            merged[key] = (f, merged[key][1] + m)
        else:
            merged[key] = (f, m)
    return [fm for _, fm in sorted(merged.items())]


def _primitive_reduce(ram, series):
    exps = [e for e, _ in series.coeffs]
    g = ram
    for e in exps:
        g = math.gcd(g, e)
    if g <= 1:
        return ram, series
    reduced = TSeries.make(
        {e // g: c for e, c in series.coeffs}, max(series.precision // g, 1)
    )
    return ram // g, reduced


def branches(f, precision=None) -> BranchSet:
    """Puiseux decomposition of {f = 0} near the origin.

    Axis components come from monomial factors; everything else goes through
    the Newton-Puiseux iteration on the squarefree factors.  Every branch is
    verified by substitution, and the tangent-cone count
    sum(mult * components * nu(curve)) == nu(f) is enforced.
    """
    germ = f if isinstance(f, Germ) else Germ(f, "f")
    p = germ.poly
    if p.is_zero:
        raise KohncertError("cannot decompose the zero germ")
    if p.coeff(0, 0) != 0:
        raise KohncertError("germ does not vanish at the origin")
    if precision is None:
        precision = min(4 * (p.trunc or 64), 256)
    out = []
    for factor, mult in squarefree_decompose(p):
        if factor.terms == BiPoly.monomial(1, 0).terms:  # z factor -> curve z=0
            curve = CurveGerm(TSeries.zero(precision), TSeries.monomial(1, 1, precision))
            out.append(Branch(curve, mult, 1, "rational"))
            continue
        if factor.terms == BiPoly.monomial(0, 1).terms:  # w factor -> curve w=0
            curve = CurveGerm(TSeries.monomial(1, 1, precision), TSeries.zero(precision))
            out.append(Branch(curve, mult, 1, "rational"))
            continue
        if factor.coeff(0, 0) != 0:
            continue  # unit factor near 0, no branch through the origin
        for ram, series, leaves, mp in _expand(factor, precision, 0, None):
            ram, series = _primitive_reduce(ram, series)
            if leaves % ram != 0:
                raise InvariantViolationError(
                    "leaf count %d not divisible by ramification %d" % (leaves, ram)
                )
            comps = leaves // ram
            alpha = TSeries.monomial(ram, 1, series.precision + ram)
            curve = CurveGerm(alpha, series)
            note = "rational" if mp is None else "extension by a root of [%s]" % (
                ", ".join(str(c) for c in mp)
            )
            out.append(Branch(curve, mult, comps, note))
    out.sort(
        key=lambda b: (
            nu_curve(b.curve).value,
            str(b.curve.alpha.coeffs),
            str(b.curve.beta.coeffs),
        )
    )
    bset = BranchSet(tuple(out), germ.label, precision)
    _check_tangent_count(p, bset)
    for b in out:
        if not verify_branch(germ, b):
            raise InvariantViolationError("branch fails substitution check: %s" % b)
    return bset


def _check_tangent_count(p, bset):
    total = 0
    for b in bset.branches:
        r = nu_curve(b.curve)
        if not r.is_exact:
            raise PrecisionError("branch order unresolved at working precision")
        total += b.multiplicity * b.components * int(r.value)
    expected = nu(p)
    if expected.is_exact and total != int(expected.value):
        raise InvariantViolationError(
            "tangent-cone count mismatch: branches give %d, nu = %s" % (total, expected)
        )


def verify_branch(f, b: Branch) -> bool:
    """True iff f composed with the branch parametrization vanishes to precision."""
    germ = f if isinstance(f, Germ) else Germ(f, "f")
    from .germs import compose_on_curve

    try:
        s = compose_on_curve(germ.poly, b.curve)
    except FieldTowerError:
        return False
    return s.known_zero
