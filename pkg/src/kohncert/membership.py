"""Local standard bases (Mora's tangent-cone algorithm) and ideal membership.

The local order takes the *smallest* total degree as leading, graded-lex
z > w as tiebreak — exactly the first stored term of a BiPoly.  Weak normal
forms are computed with Mora's ecart strategy; a normal form of zero is a
constructive membership certificate (a unit times the element lies in the
ideal generated by the inputs), so reductions to zero are sound regardless
of how far the basis was completed.  Completeness holds for elements of
order below the degree budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bipoly import BiPoly
from .errors import KohncertError

_REDUCTION_CAP = 200000


def _lt(p):
    """Leading (local) term of a nonzero BiPoly: ((a, b), coeff)."""
    return p.terms[0]


def _ecart(p):
    (a, b), _ = p.terms[0]
    return p.total_degree() - (a + b)


def _divides(m1, m2):
    return m1[0] <= m2[0] and m1[1] <= m2[1]


def _mono_quot(m1, m2):
    return (m1[0] - m2[0], m1[1] - m2[1])


def mora_normal_form(g, basis):
    """Weak normal form of g modulo the basis list (Mora's algorithm)."""
    reducers = list(basis)
    h = g
    count = 0
    while not h.is_zero:
        lt_h = _lt(h)
        candidates = [t for t in reducers if _divides(_lt(t)[0], lt_h[0])]
        if not candidates:
            break
        t = min(candidates, key=lambda u: (_ecart(u), reducers.index(u)))
        if _ecart(t) > _ecart(h):
            reducers.append(h)
        (qa, qb) = _mono_quot(lt_h[0], _lt(t)[0])
        coeff = lt_h[1] / _lt(t)[1]
        h = h - BiPoly.monomial(qa, qb, coeff) * t
        count += 1
        if count > _REDUCTION_CAP:
            raise KohncertError("Mora reduction iteration cap exceeded")
    return h


@dataclass(frozen=True)
class LocalBasis:
    generators: tuple
    complete_to_degree: int

    def staircase_monomials(self):
        """Standard monomials (not divisible by any leading term); None if infinite."""
        lts = [(_lt(g)[0]) for g in self.generators]
        pure_z = min((a for a, b in lts if b == 0), default=None)
        pure_w = min((b for a, b in lts if a == 0), default=None)
        if pure_z is None or pure_w is None:
            return None
        out = []
        for a in range(pure_z):
            for b in range(pure_w):
                if not any(_divides(m, (a, b)) for m in lts):
                    out.append((a, b))
        return sorted(out, key=lambda ab: (ab[0] + ab[1], -ab[0]))


def local_basis(generators, degree_budget) -> LocalBasis:
    """Standard basis of the ideal generated by `generators`, up to the budget.

    Accepts a list of BiPoly or an IdealPair-like object with F / Ftilde.
    S-pairs whose lcm exceeds the budget are discarded: reductions to zero
    stay sound, completeness is claimed only below the budget.
    """
    if hasattr(generators, "F"):
        gens = [generators.F.poly, generators.Ftilde.poly]
    else:
        gens = [g.poly if hasattr(g, "poly") else g for g in generators]
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        raise KohncertError("local basis of the zero ideal")
    basis = []
    for g in gens:
        h = mora_normal_form(g, basis)
        if not h.is_zero:
            basis.append(h)
    pairs = [(i, j) for i in range(len(basis)) for j in range(i)]
    guard = 0
    while pairs:
        guard += 1
        if guard > 10000:
            raise KohncertError("standard-basis completion cap exceeded")
        pairs.sort(
            key=lambda ij: _pair_degree(basis[ij[0]], basis[ij[1]]), reverse=True
        )
        i, j = pairs.pop()
        if _pair_degree(basis[i], basis[j]) >= degree_budget:
            continue
        s = _s_poly(basis[i], basis[j])
        if s.is_zero:
            continue
        h = mora_normal_form(s, basis)
        if h.is_zero:
            continue
        basis.append(h)
        pairs.extend((len(basis) - 1, k) for k in range(len(basis) - 1))
    return LocalBasis(tuple(basis), degree_budget)


def _pair_degree(f, g):
    mf, mg = _lt(f)[0], _lt(g)[0]
    lcm = (max(mf[0], mg[0]), max(mf[1], mg[1]))
    return lcm[0] + lcm[1]


def _s_poly(f, g):
    mf, cf = _lt(f)
    mg, cg = _lt(g)
    lcm = (max(mf[0], mg[0]), max(mf[1], mg[1]))
    tf = BiPoly.monomial(*_mono_quot(lcm, mf), Fraction(1))
    tg = BiPoly.monomial(*_mono_quot(lcm, mg), Fraction(1) * cf / cg)
    return tf * f - tg * g


def reduces_to_zero(g, basis: LocalBasis) -> bool:
    """True iff g lies in the ideal, verified up to the basis degree budget."""
    p = g.poly if hasattr(g, "poly") else g
    if p.is_zero:
        return True
    d = p.lowest_degree()
    if d is not None and d >= basis.complete_to_degree:
        raise KohncertError(
            "membership query of order %d exceeds the degree budget %d"
            % (d, basis.complete_to_degree)
        )
    return mora_normal_form(p, list(basis.generators)).is_zero


def staircase_dimension(basis: LocalBasis):
    """Colength of the ideal read off the staircase; None when not zero-dimensional."""
    mons = basis.staircase_monomials()
    return None if mons is None else len(mons)


def min_power_in_ideal(var, basis: LocalBasis, cap=None):
    """Least p with var^p in the ideal, or None below the cap."""
    cap = cap or basis.complete_to_degree
    for p in range(1, cap):
        mono = BiPoly.monomial(p, 0) if var == "z" else BiPoly.monomial(0, p)
        if reduces_to_zero(mono, basis):
            return p
    return None


def max_ideal_power_bound(basis: LocalBasis, cap=None):
    """Least a with every degree-a monomial in the ideal (K(I)), or None below cap."""
    cap = cap or basis.complete_to_degree
    for a in range(1, cap):
        ok = True
        for i in range(a + 1):
            if not reduces_to_zero(BiPoly.monomial(i, a - i), basis):
                ok = False
                break
        if ok:
            return a
    return None
